//! Exact certificates for the invertible-transversal theorem over `Z`, `Z/n`,
//! `GF(p)` and `Q`.
//!
//! Let `M` be a matrix over `A x B` whose columns are partitioned into blocks
//! `B_1, ..., B_n`. If no `|A| x |A|` submatrix taking one column from each of
//! `|A|` distinct blocks is invertible, then there are an invertible `Q` and a
//! non-empty row set `A′` such that `QM` is in reduced echelon form and at
//! most `|A′| - 1` of the blocks `(QM)[A′, B_i]` have a column with a unit
//! entry but no non-zero non-unit. [`engine::certify`] builds `Q` and `A′`;
//! [`oracle::verify_certificate`] re-checks them independently.
//!
//! ```
//! use ringcert::{engine, matrix::{IndexSet, IndexedMatrix}, rings::Ring, transversal::*};
//!
//! let gf2 = Ring::prime_field(2)?;
//! let m = IndexedMatrix::from_ints(gf2, &[[1, 1, 1, 1], [1, 1, 1, 1]])?;
//! let blocks = vec![IndexSet::new([1, 2])?, IndexSet::new([3, 4])?];
//! let inst = Instance::new(m.clone(), ColumnPartition::new(blocks, m.cols())?)?;
//! let cert = engine::certify(&inst)?;
//! assert_eq!(cert.m, 1);
//! # Ok::<(), ringcert::Error>(())
//! ```

pub mod echelon;
pub mod engine;
mod error;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod rado;
pub mod rings;
pub mod transversal;

pub use error::{Error, Result};
