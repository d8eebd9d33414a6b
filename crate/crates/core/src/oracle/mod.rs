//! Independent checkers and the random instance generator.
//!
//! Nothing here calls into the engine or the rank condition; the checks are
//! rebuilt from the ring and matrix primitives.

mod brute;
mod generate;
mod verify;

pub use brute::{general_linear_group, t_max_bruteforce, t_max_with_group, SEARCH_LIMIT};
pub use generate::{generate, Generated, InstanceSpec, Sampler, ATTEMPT_CAP, PCG_STREAM, PRNG_ALGORITHM};
pub use verify::{bad_blocks, verify_certificate, Verdict};

use itertools::Itertools;

use crate::matrix::{IndexSet, IndexedMatrix};
use crate::rings::RingElement;
use crate::transversal::Instance;

/// Rank over a field by plain row reduction on a copy of the entries.
fn rank_by_elimination(m: &IndexedMatrix) -> usize {
    let mut a: Vec<Vec<RingElement>> = m.to_rows();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][c].try_inverse().expect("field element");
        for r in rank + 1..rows {
            let f = &a[r][c] * &inv;
            for k in c..cols {
                let v = &a[r][k] - &(&f * &a[rank][k]);
                a[r][k] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// First size-`k` partial transversal `J` (lexicographic) with `M[A, J]` of
/// rank `k`, found by trying every column subset. Field entries only.
pub fn independent_transversal(inst: &Instance, k: usize) -> Option<IndexSet> {
    let m = inst.matrix();
    assert!(m.ring().is_field(), "rank search needs a field");
    let pi = inst.partition();
    m.cols()
        .iter()
        .combinations(k)
        .filter(|cols| cols.iter().map(|&c| pi.block_of(c)).all_unique())
        .map(|cols| IndexSet::new(cols).expect("distinct columns"))
        .find(|cols| rank_by_elimination(&m.submatrix(m.rows(), cols).expect("columns of M")) == k)
}

/// Whether the last `m` rows of `Q M` (in the order of `Q`'s row labels)
/// vanish on every block except at most `m - 1` of them, with `Q` invertible.
pub fn is_null_row_form(inst: &Instance, q: &IndexedMatrix, m: usize) -> bool {
    let mat = inst.matrix();
    let p = mat.rows().len();
    if m == 0 || m > p || q.rows() != mat.rows() || q.cols() != mat.rows() {
        return false;
    }
    if !q.determinant().map(|d| d.is_unit()).unwrap_or(false) {
        return false;
    }
    let qm = q.matmul(mat).expect("shapes checked");
    let last = &mat.rows().as_slice()[p - m..];
    let pi = inst.partition();
    let touched = (1..=pi.len())
        .filter(|&i| pi.block(i).iter().any(|c| last.iter().any(|&r| !qm[(r, c)].is_zero())))
        .count();
    touched < m
}
