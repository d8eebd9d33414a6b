use thiserror::Error;

use crate::engine::Audit;
use crate::matrix::IndexSet;
use crate::rings::{Ring, RingElement};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Z/n requires n >= 2, got {0}")]
    InvalidModulus(u64),
    #[error("GF(p) requires a prime p, got {0}")]
    NotPrime(u64),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("index sets hold positive integers without repetition: {0}")]
    InvalidIndexSet(String),
    #[error("{0} is not a subset of {1}")]
    NotSubset(IndexSet, IndexSet),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a unit")]
    NotAUnit(RingElement),
    #[error("row operation needs distinct rows, got {0} twice")]
    SameRow(usize),
    #[error("invalid column partition: {0}")]
    InvalidPartition(String),
    #[error("majorization needs monotone sequences of equal length: {0}")]
    InvalidSequence(String),
    #[error("{0} is not a field")]
    NotAField(Ring),
    #[error("no admissible set exists")]
    NoAdmissibleSet,
    #[error("first-kind admissible set has no 0 -> T path to shorten")]
    FirstKind,
    #[error("hypothesis fails: columns {columns} give an invertible transversal submatrix (det = {determinant})")]
    HypothesisFails {
        columns: IndexSet,
        determinant: RingElement,
    },
    #[error("certificate self-check failed: {diagnostic}")]
    SelfCheck {
        diagnostic: String,
        audit: Box<Audit>,
    },
    #[error("brute-force search space too large ({size} matrices)")]
    SearchTooLarge { size: u128 },
    #[error("no instance satisfying the hypothesis after {0} attempts; try a smaller p or a larger n")]
    AttemptCapExceeded(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
