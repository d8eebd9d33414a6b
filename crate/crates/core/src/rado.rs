//! Independent partial transversals over a field.
//!
//! A partition `B_1, ..., B_n` of the columns of `M` has a partial transversal
//! `J` of size `k` with `M[A, J]` of rank `k` exactly when, for every
//! subfamily `Θ` of blocks, `rank M[A, ∪Θ] ≥ k + |Θ| - n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::rings::RingElement;
use crate::transversal::{partial_transversals, Instance};

fn require_field(m: &IndexedMatrix) -> Result<()> {
    if m.ring().is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(m.ring()))
    }
}

/// Gauss-Jordan elimination. Returns `Q` (labelled `rows x rows`) and the
/// rank `ρ`; `QM` has its pivot rows first and zero rows in the last
/// `|rows| - ρ` positions.
fn gauss_jordan(m: &IndexedMatrix) -> (IndexedMatrix, usize) {
    let ring = m.ring();
    let p = m.rows().len();
    let mut a = m.to_rows();
    let mut q: Vec<Vec<RingElement>> = (0..p)
        .map(|i| (0..p).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    let cols = m.cols().len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..p).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        q.swap(rank, pivot);
        let inv = a[rank][c].try_inverse().expect("non-zero field element");
        for row in [&mut a[rank], &mut q[rank]] {
            for e in row.iter_mut() {
                *e = &*e * &inv;
            }
        }
        for r in (0..p).filter(|&r| r != rank) {
            let f = a[r][c].clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = &a[r][k] - &(&f * &a[rank][k]);
                a[r][k] = v;
            }
            for k in 0..p {
                let v = &q[r][k] - &(&f * &q[rank][k]);
                q[r][k] = v;
            }
        }
        rank += 1;
    }
    let labels = m.rows().clone();
    let q = IndexedMatrix::from_fn(ring, labels.clone(), labels.clone(), |r, s| {
        q[labels.position(r).expect("row")][labels.position(s).expect("row")].clone()
    });
    (q, rank)
}

pub fn field_rank(m: &IndexedMatrix) -> Result<usize> {
    require_field(m)?;
    Ok(gauss_jordan(m).1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RadoReport {
    pub k: usize,
    pub holds: bool,
    pub violating_family: Option<Vec<usize>>,
    pub witness_transversal: Option<IndexSet>,
}

/// Checks the rank condition over all `2^n` subfamilies. On failure the
/// violating family has the smallest surplus `rank - (k + |Θ| - n)`, ties going
/// to the lexicographically smallest list of block indices. On success a
/// witness transversal is found by exhaustive search.
pub fn rado_condition(inst: &Instance, k: usize) -> Result<RadoReport> {
    let m = inst.matrix();
    require_field(m)?;
    let pi = inst.partition();
    let n = pi.len();
    if k > m.rows().len().min(n) {
        return Err(Error::Dimension(format!("k = {k} exceeds min(|A|, n) = {}", m.rows().len().min(n))));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::Dimension(format!("{n} blocks is too many subfamilies to enumerate")));
    }
    let mut worst: Option<(i64, Vec<usize>)> = None;
    for mask in 0u64..1 << n {
        let family: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let cols = pi.union_of(&family);
        let rank = field_rank(&m.submatrix(m.rows(), &cols)?)? as i64;
        let surplus = rank - (k as i64 + family.len() as i64 - n as i64);
        if surplus < 0 && worst.as_ref().is_none_or(|(s, f)| (surplus, &family) < (*s, f)) {
            worst = Some((surplus, family));
        }
    }
    let witness = partial_transversals(pi, k)
        .find(|cols| field_rank(&m.submatrix(m.rows(), cols).expect("columns of M")).expect("field") == k);
    match (worst, witness) {
        (None, Some(w)) => Ok(RadoReport {
            k,
            holds: true,
            violating_family: None,
            witness_transversal: Some(w),
        }),
        (Some((_, family)), None) => Ok(RadoReport {
            k,
            holds: false,
            violating_family: Some(family),
            witness_transversal: None,
        }),
        (None, None) => Err(Error::Internal("rank condition holds but no independent transversal exists".into())),
        (Some(_), Some(w)) => Err(Error::Internal(format!("rank condition fails yet {w} is independent"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullRowForm {
    pub q: IndexedMatrix,
    pub m: usize,
    pub family: Vec<usize>,
    pub rank: usize,
}

/// When no `|A| x |A|` transversal submatrix is invertible, returns `Q` and
/// `m` such that the last `m` rows of `QM` vanish on all blocks of the
/// violating family, leaving at most `m - 1` blocks where they may not.
pub fn corollary_nullrow_form(inst: &Instance) -> Result<Option<NullRowForm>> {
    let p = inst.rank_target();
    let n = inst.partition().len();
    if p > n {
        require_field(inst.matrix())?;
        let (q, rank) = gauss_jordan(&inst.matrix().submatrix(inst.matrix().rows(), &IndexSet::empty())?);
        return Ok(Some(NullRowForm { q, m: p - rank, family: Vec::new(), rank }));
    }
    let report = rado_condition(inst, p)?;
    let Some(family) = report.violating_family else {
        return Ok(None);
    };
    let m = inst.matrix();
    let cols = inst.partition().union_of(&family);
    let (q, rank) = gauss_jordan(&m.submatrix(m.rows(), &cols)?);
    Ok(Some(NullRowForm { q, m: p - rank, family, rank }))
}
