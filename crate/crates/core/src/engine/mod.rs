//! Certificate construction.
//!
//! Given a matrix `M` over `A x B` and a partition `B_1, ..., B_n` of its
//! columns such that no `|A| x |A|` transversal submatrix is invertible,
//! [`certify`] produces an invertible `Q`, a non-empty row set `A′` and the
//! block indices that may be bad, where block `i` is bad when some column of
//! `(QM)[A′, B_i]` has a unit entry and no non-zero non-unit. At most
//! `|A′| - 1` blocks are bad, and `QM` is in reduced echelon form.

mod certify;
mod graph;

pub use certify::{certify, to_theorem_form, Audit, Branch, SwapStep, TheoremCertificate};
pub use graph::{is_clear_path, Arrow, ConnectionGraph, Kind, ORIGIN};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transversal::{strictly_majorizes, AdmissibleSet, Instance};

/// A unit `(QM)[row, column]` with `row ∈ A_i`, `column ∈ B_j` and
/// `w_i ≥ w_j + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapViolation {
    pub row: usize,
    pub column: usize,
    pub row_block: usize,
    pub column_block: usize,
    /// The column of `P ∩ B_i` whose unit vector sits in `row`.
    pub pivot_column: usize,
}

pub fn gap_violations(inst: &Instance, set: &AdmissibleSet) -> Vec<GapViolation> {
    let qm = set.reduced();
    let pi = inst.partition();
    let mut out = Vec::new();
    for i in 1..=pi.len() {
        for j in 1..=pi.len() {
            if set.weight(i) < set.weight(j) + 2 {
                continue;
            }
            for row in set.row_group(i).iter() {
                for column in pi.block(j).iter() {
                    if qm[(row, column)].is_unit() {
                        out.push(GapViolation {
                            row,
                            column,
                            row_block: i,
                            column_block: j,
                            pivot_column: set.pivot_column(row).expect("row of A"),
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|v| (v.row, v.column));
    out
}

/// `P′ = P ∪ {c} \ {c′}`.
pub fn gap_swap(inst: &Instance, set: &AdmissibleSet, violation: &GapViolation) -> Result<AdmissibleSet> {
    if !gap_violations(inst, set).contains(violation) {
        return Err(Error::Internal(format!("({}, {}) is not a gap violation", violation.row, violation.column)));
    }
    let columns = set.columns().without(violation.pivot_column).with(violation.column);
    AdmissibleSet::new(inst, columns)?
        .ok_or_else(|| Error::Internal("gap swap produced a singular column set".into()))
}

/// Shortens the connection distance of a second-kind set: with
/// `(s_l, c_l, t_l)` the last arrow of the shortest path and `c` the column of
/// `P` carrying the unit vector of `t_l`, returns `P ∪ {c_l} \ {c}`.
pub fn distance_reducing_swap(inst: &Instance, set: &AdmissibleSet, graph: &ConnectionGraph) -> Result<AdmissibleSet> {
    let path = graph.shortest_path().ok_or(Error::FirstKind)?;
    let last = path.last().expect("paths are non-empty");
    let removed = set.pivot_column(last.target).expect("target is a row");
    let pi = inst.partition();
    let k = pi.block_of(removed).expect("partitioned column");
    if set.weight(k) != 2 {
        return Err(Error::Internal(format!("path ends in a block of weight {}", set.weight(k))));
    }
    let j = pi.block_of(last.column).expect("partitioned column");
    if set.weight(j) != 1 {
        return Err(Error::Internal(format!(
            "last arrow passes through block {j} of weight {}",
            set.weight(j)
        )));
    }
    let columns = set.columns().without(removed).with(last.column);
    AdmissibleSet::new(inst, columns)?
        .ok_or_else(|| Error::Internal("distance-reducing swap produced a singular column set".into()))
}

/// `(|spread|, profile sequence, -distance)`, compared lexicographically with
/// majorization on the middle component. First kind counts as distance zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Measure {
    pub spread: usize,
    pub profile: Vec<usize>,
    pub distance: Option<usize>,
}

impl Measure {
    pub fn of(set: &AdmissibleSet, graph: &ConnectionGraph) -> Self {
        Measure {
            spread: set.spread().len(),
            profile: set.profile_sequence(),
            distance: graph.connection_distance(),
        }
    }

    pub fn improves_on(&self, before: &Measure) -> bool {
        if self.spread != before.spread {
            return self.spread > before.spread;
        }
        if self.profile != before.profile {
            return strictly_majorizes(&self.profile, &before.profile).unwrap_or(false);
        }
        match (before.distance, self.distance) {
            (Some(_), None) => true,
            (Some(b), Some(a)) => a < b,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests;
