use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{distance_reducing_swap, gap_violations, ConnectionGraph, GapViolation, Kind, Measure};
use crate::echelon::reduce;
use crate::error::{Error, Result};
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::oracle::verify_certificate;
use crate::transversal::{invertible_transversal, select_extremal, AdmissibleSet, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Fewer blocks than rows.
    FewBlocks,
    /// No admissible set; `A′` is the set of unit-free rows of the reduced form.
    NoAdmissible,
    /// No block of weight exactly 2.
    NoWeightTwo,
    /// A first-kind admissible set.
    FirstKind,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::FewBlocks => "FewBlocks",
            Branch::NoAdmissible => "NoAdmissible",
            Branch::NoWeightTwo => "NoWeightTwo",
            Branch::FirstKind => "FirstKind",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Branch::FewBlocks, Branch::NoAdmissible, Branch::NoWeightTwo, Branch::FirstKind]
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown branch {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SwapStep {
    pub removed: usize,
    pub added: usize,
    pub before: Measure,
    pub after: Measure,
}

/// How a certificate was obtained.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Audit {
    pub branch: Option<Branch>,
    pub echelon_rank: Option<usize>,
    pub initial_set: Option<IndexSet>,
    pub initial_distance: Option<usize>,
    pub final_set: Option<IndexSet>,
    pub final_weights: Vec<usize>,
    pub swaps: Vec<SwapStep>,
    pub final_gap_violations: Vec<GapViolation>,
    /// `(block, column)` pairs with `block ∈ S` where a unit of
    /// `(QM)[A′, column]` is not matched by a non-zero non-unit in `T`.
    pub first_kind_exceptions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCertificate {
    pub q: IndexedMatrix,
    pub rows: IndexSet,
    pub m: usize,
    pub possibly_bad_blocks: Vec<usize>,
    pub branch: Branch,
    pub audit: Audit,
}

/// Builds and self-checks a certificate. Fails with
/// [`Error::HypothesisFails`] when some transversal submatrix is invertible.
pub fn certify(inst: &Instance) -> Result<TheoremCertificate> {
    if let Some(w) = invertible_transversal(inst) {
        return Err(Error::HypothesisFails {
            columns: w.columns,
            determinant: w.determinant,
        });
    }
    let mut audit = Audit::default();
    let cert = construct(inst, &mut audit)?;
    let verdict = verify_certificate(inst, &cert);
    match verdict.diagnostic {
        None => Ok(cert),
        Some(diagnostic) => Err(Error::SelfCheck {
            diagnostic,
            audit: Box::new(cert.audit),
        }),
    }
}

fn fail(diagnostic: String, audit: &Audit) -> Error {
    Error::SelfCheck {
        diagnostic,
        audit: Box::new(audit.clone()),
    }
}

fn construct(inst: &Instance, audit: &mut Audit) -> Result<TheoremCertificate> {
    let m = inst.matrix();
    let p = inst.rank_target();
    let n = inst.partition().len();

    if n < p {
        let ech = reduce(m);
        audit.branch = Some(Branch::FewBlocks);
        audit.echelon_rank = Some(ech.t);
        return Ok(TheoremCertificate {
            q: ech.q,
            rows: m.rows().clone(),
            m: p,
            possibly_bad_blocks: (1..=n).collect(),
            branch: Branch::FewBlocks,
            audit: audit.clone(),
        });
    }

    let mut set = match select_extremal(inst) {
        Ok(set) => set,
        Err(Error::NoAdmissibleSet) => {
            let ech = reduce(m);
            audit.branch = Some(Branch::NoAdmissible);
            audit.echelon_rank = Some(ech.t);
            let rows = if ech.t == 0 {
                IndexSet::from(m.rows().as_slice()[0])
            } else {
                ech.reduced.rows_without_units()
            };
            if ech.t > 0 && rows.len() != p - ech.t {
                return Err(fail(format!("{} unit-free rows, expected {}", rows.len(), p - ech.t), audit));
            }
            return Ok(TheoremCertificate {
                q: ech.q,
                m: rows.len(),
                rows,
                possibly_bad_blocks: Vec::new(),
                branch: Branch::NoAdmissible,
                audit: audit.clone(),
            });
        }
        Err(e) => return Err(e),
    };

    audit.initial_set = Some(set.columns().clone());
    let violations = gap_violations(inst, &set);
    if !violations.is_empty() {
        audit.final_gap_violations = violations;
        return Err(fail("maximal admissible set violates the gap condition".into(), audit));
    }

    let mut graph = ConnectionGraph::build(inst, &set);
    audit.initial_distance = graph.connection_distance();
    while let Kind::Second { distance } = graph.kind() {
        if distance < 2 {
            return Err(fail(format!("maximal admissible set at connection distance {distance}"), audit));
        }
        let next = distance_reducing_swap(inst, &set, &graph).map_err(|e| fail(e.to_string(), audit))?;
        let next_graph = ConnectionGraph::build(inst, &next);
        let step = SwapStep {
            removed: set.columns().difference(next.columns()).as_slice()[0],
            added: next.columns().difference(set.columns()).as_slice()[0],
            before: Measure::of(&set, &graph),
            after: Measure::of(&next, &next_graph),
        };
        let improved = step.after.improves_on(&step.before);
        audit.swaps.push(step);
        if !improved {
            return Err(fail("swap did not improve the measure".into(), audit));
        }
        if audit.swaps.len() >= audit.initial_distance.unwrap_or(0) {
            return Err(fail("distance loop exceeded its bound".into(), audit));
        }
        set = next;
        graph = next_graph;
    }

    audit.final_set = Some(set.columns().clone());
    audit.final_weights = set.weights().to_vec();
    audit.final_gap_violations = gap_violations(inst, &set);
    if !audit.final_gap_violations.is_empty() {
        return Err(fail("final admissible set violates the gap condition".into(), audit));
    }
    if set.reduced().distinct_unit_columns() != p {
        return Err(fail("QM lacks |A| distinct unit columns".into(), audit));
    }

    let (branch, blocks) = if set.weights().iter().all(|&w| w != 2) {
        (Branch::NoWeightTwo, (1..=n).filter(|&i| set.weight(i) > 2).collect::<Vec<_>>())
    } else {
        let on_paths = graph.arrows_on_paths_to_targets();
        let pi = inst.partition();
        let separated: Vec<usize> = (1..=n)
            .filter(|&i| set.weight(i) == 1 && !on_paths.iter().any(|a| pi.block_of(a.column) == Some(i)))
            .collect();
        let blocks: Vec<usize> = (1..=n).filter(|i| !separated.contains(i)).collect();
        let rows = rows_of(&set, &blocks);
        audit.first_kind_exceptions = first_kind_exceptions(inst, &set, graph.targets(), &rows, &separated);
        (Branch::FirstKind, blocks)
    };
    audit.branch = Some(branch);
    let rows = rows_of(&set, &blocks);
    Ok(TheoremCertificate {
        q: set.q().clone(),
        m: rows.len(),
        rows,
        possibly_bad_blocks: blocks,
        branch,
        audit: audit.clone(),
    })
}

fn rows_of(set: &AdmissibleSet, blocks: &[usize]) -> IndexSet {
    blocks
        .iter()
        .fold(IndexSet::empty(), |acc, &i| acc.union(set.row_group(i)))
}

fn first_kind_exceptions(
    inst: &Instance,
    set: &AdmissibleSet,
    targets: &IndexSet,
    rows: &IndexSet,
    separated: &[usize],
) -> Vec<(usize, usize)> {
    let qm = set.reduced();
    let mut out = Vec::new();
    for &i in separated {
        for c in inst.partition().block(i).iter() {
            let has_unit = rows.iter().any(|r| qm[(r, c)].is_unit());
            let matched = targets.iter().any(|r| qm[(r, c)].is_nonzero_nonunit());
            if has_unit && !matched {
                out.push((i, c));
            }
        }
    }
    out
}

/// Reorders the rows of `Q` so that `A′` comes last, the other rows first,
/// both ascending. Returns the permuted `Q` and `m`.
pub fn to_theorem_form(cert: &TheoremCertificate) -> Result<(IndexedMatrix, usize)> {
    let rows = cert.q.rows();
    if !cert.rows.is_subset(rows) {
        return Err(Error::NotSubset(cert.rows.clone(), rows.clone()));
    }
    let order: Vec<usize> = rows.difference(&cert.rows).iter().chain(cert.rows.iter()).collect();
    Ok((cert.q.permute_rows(&order)?, cert.m))
}
