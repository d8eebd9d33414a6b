//! Column partitions, partial transversals and admissible sets.
//!
//! An admissible set is a set `P` of `|A|` columns with `M[A, P]` invertible.
//! Each carries the inverse `Q` of `M[A, P]`, the block weights
//! `w_i = |P ∩ B_i|`, the spread `{i : w_i > 0}`, the ascending profile
//! sequence of the non-zero weights, and the row groups
//! `A_i = {r : (QM)[r, c] = 1 for some c ∈ P ∩ B_i}`.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::rings::RingElement;

/// An ordered list of blocks `B_1, ..., B_n` partitioning a column set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnPartition {
    blocks: Vec<IndexSet>,
    block_of: BTreeMap<usize, usize>,
}

impl ColumnPartition {
    /// Validates that the blocks are non-empty, pairwise disjoint and cover `cols`.
    pub fn new(blocks: Vec<IndexSet>, cols: &IndexSet) -> Result<Self> {
        let mut block_of = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", i + 1)));
            }
            for c in b.iter() {
                if let Some(j) = block_of.insert(c, i + 1) {
                    return Err(Error::InvalidPartition(format!(
                        "column {c} lies in blocks {j} and {}",
                        i + 1
                    )));
                }
            }
        }
        let covered = IndexSet::new(block_of.keys().copied())?;
        if &covered != cols {
            return Err(Error::InvalidPartition(format!("blocks cover {covered}, columns are {cols}")));
        }
        Ok(ColumnPartition { blocks, block_of })
    }

    /// One block per column.
    pub fn singletons(cols: &IndexSet) -> Self {
        Self::new(cols.iter().map(IndexSet::from).collect(), cols).expect("singletons partition")
    }

    /// Number of blocks `n`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    /// Block `B_i`, `i` in `1..=n`.
    pub fn block(&self, i: usize) -> &IndexSet {
        &self.blocks[i - 1]
    }

    /// 1-based index of the block holding column `c`.
    pub fn block_of(&self, c: usize) -> Option<usize> {
        self.block_of.get(&c).copied()
    }

    /// Union of the blocks with the given 1-based indices.
    pub fn union_of(&self, indices: &[usize]) -> IndexSet {
        IndexSet::from_sorted(
            indices
                .iter()
                .flat_map(|&i| self.block(i).iter())
                .sorted_unstable()
                .collect(),
        )
    }

    pub fn is_partial_transversal(&self, cols: &IndexSet) -> bool {
        cols.iter().filter_map(|c| self.block_of(c)).all_unique()
    }
}

/// A matrix together with a partition of its columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    matrix: IndexedMatrix,
    partition: ColumnPartition,
}

impl Instance {
    pub fn new(matrix: IndexedMatrix, partition: ColumnPartition) -> Result<Self> {
        let covered = IndexSet::new(partition.block_of.keys().copied())?;
        if &covered != matrix.cols() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {covered}, matrix columns are {}",
                matrix.cols()
            )));
        }
        if matrix.rows().is_empty() {
            return Err(Error::Dimension("the matrix needs at least one row".into()));
        }
        Ok(Instance { matrix, partition })
    }

    pub fn matrix(&self) -> &IndexedMatrix {
        &self.matrix
    }

    pub fn partition(&self) -> &ColumnPartition {
        &self.partition
    }

    /// `p = |A|`.
    pub fn rank_target(&self) -> usize {
        self.matrix.rows().len()
    }
}

/// Size-`k` partial transversals, in lexicographic order of column labels.
pub fn partial_transversals(partition: &ColumnPartition, k: usize) -> impl Iterator<Item = IndexSet> + '_ {
    let cols: Vec<usize> = partition.block_of.keys().copied().collect();
    cols.into_iter()
        .combinations(k)
        .filter(|c| c.iter().map(|&x| partition.block_of[&x]).all_unique())
        .map(IndexSet::from_sorted)
}

/// An invertible transversal submatrix: the hypothesis fails on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalWitness {
    pub columns: IndexSet,
    pub determinant: RingElement,
}

/// First (lexicographic) partial transversal `J` of size `|A|` with `M[A, J]`
/// invertible.
pub fn invertible_transversal(inst: &Instance) -> Option<TransversalWitness> {
    let m = inst.matrix();
    partial_transversals(inst.partition(), m.rows().len()).find_map(|cols| {
        let det = m
            .submatrix(m.rows(), &cols)
            .expect("transversal columns")
            .determinant()
            .expect("square");
        det.is_unit().then_some(TransversalWitness {
            columns: cols,
            determinant: det,
        })
    })
}

/// No `|A| x |A|` transversal submatrix is invertible.
pub fn hypothesis_holds(inst: &Instance) -> bool {
    invertible_transversal(inst).is_none()
}

/// An admissible column set with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    columns: IndexSet,
    q: IndexedMatrix,
    reduced: IndexedMatrix,
    weights: Vec<usize>,
    row_groups: Vec<IndexSet>,
}

impl AdmissibleSet {
    /// `None` when `M[A, columns]` is not invertible.
    pub fn new(inst: &Instance, columns: IndexSet) -> Result<Option<Self>> {
        let m = inst.matrix();
        if columns.len() != m.rows().len() {
            return Err(Error::Dimension(format!(
                "{columns} has {} columns, the matrix {} rows",
                columns.len(),
                m.rows().len()
            )));
        }
        let Some(inv) = m.submatrix(m.rows(), &columns)?.try_inverse() else {
            return Ok(None);
        };
        // The inverse is labelled P x A; relabel it A x A, positions in
        // ascending order on both sides.
        let q = IndexedMatrix::from_fn(m.ring(), m.rows().clone(), m.rows().clone(), |r, s| {
            let i = m.rows().position(r).expect("row");
            inv[(columns.as_slice()[i], s)].clone()
        });
        let reduced = q.matmul(m)?;
        let n = inst.partition().len();
        let mut weights = vec![0; n];
        let mut groups = vec![Vec::new(); n];
        for (c, r) in columns.iter().zip(m.rows().iter()) {
            let b = inst.partition().block_of(c).expect("partitioned column");
            weights[b - 1] += 1;
            groups[b - 1].push(r);
        }
        Ok(Some(AdmissibleSet {
            columns,
            q,
            reduced,
            weights,
            row_groups: groups.into_iter().map(IndexSet::from_sorted).collect(),
        }))
    }

    pub fn columns(&self) -> &IndexSet {
        &self.columns
    }

    /// Inverse of `M[A, P]`, relabelled as an `A x A` matrix.
    pub fn q(&self) -> &IndexedMatrix {
        &self.q
    }

    /// `QM`; its columns in `P` are the standard unit vectors in ascending order.
    pub fn reduced(&self) -> &IndexedMatrix {
        &self.reduced
    }

    /// Weights `w_1, ..., w_n`.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// `w_i` for a 1-based block index.
    pub fn weight(&self, i: usize) -> usize {
        self.weights[i - 1]
    }

    /// 1-based indices of the blocks met by `P`.
    pub fn spread(&self) -> Vec<usize> {
        (1..=self.weights.len()).filter(|&i| self.weight(i) > 0).collect()
    }

    pub fn profile_sequence(&self) -> Vec<usize> {
        self.weights.iter().copied().filter(|&w| w > 0).sorted().collect()
    }

    /// `A_i` for a 1-based block index.
    pub fn row_group(&self, i: usize) -> &IndexSet {
        &self.row_groups[i - 1]
    }

    /// Row of `A` whose unit vector sits in column `c ∈ P`.
    pub fn pivot_row(&self, c: usize) -> Option<usize> {
        self.columns.position(c).map(|i| self.q.rows().as_slice()[i])
    }

    /// Column of `P` carrying the unit vector of row `r`.
    pub fn pivot_column(&self, r: usize) -> Option<usize> {
        self.q.rows().position(r).map(|i| self.columns.as_slice()[i])
    }
}

/// All admissible sets, in lexicographic order of their column sets.
pub fn admissible_sets(inst: &Instance) -> impl Iterator<Item = AdmissibleSet> + '_ {
    let p = inst.rank_target();
    inst.matrix()
        .cols()
        .iter()
        .combinations(p)
        .filter_map(move |cols| AdmissibleSet::new(inst, IndexSet::from_sorted(cols)).expect("size |A|"))
}

fn check_sequence(a: &[usize]) -> Result<()> {
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidSequence(format!("{a:?} is not increasing")));
    }
    Ok(())
}

/// `a` majorizes `b`: every prefix sum of `a` is at least the corresponding
/// prefix sum of `b`, with equal totals. Both ascending, of equal length.
pub fn majorizes(a: &[usize], b: &[usize]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::InvalidSequence(format!("lengths {} and {}", a.len(), b.len())));
    }
    check_sequence(a)?;
    check_sequence(b)?;
    let mut sa = 0;
    let mut sb = 0;
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(sa == sb)
}

pub fn strictly_majorizes(a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(a != b && majorizes(a, b)?)
}

/// The maximal admissible sets: maximum spread size, and a profile sequence
/// not strictly majorized by that of another maximum-spread admissible set.
/// Lexicographic order of column sets.
pub fn maximal_admissible_sets(inst: &Instance) -> Vec<AdmissibleSet> {
    let all: Vec<AdmissibleSet> = admissible_sets(inst).collect();
    let Some(best) = all.iter().map(|s| s.spread().len()).max() else {
        return Vec::new();
    };
    let widest: Vec<AdmissibleSet> = all.into_iter().filter(|s| s.spread().len() == best).collect();
    let profiles: Vec<Vec<usize>> = widest.iter().map(AdmissibleSet::profile_sequence).unique().collect();
    widest
        .into_iter()
        .filter(|s| {
            let own = s.profile_sequence();
            !profiles
                .iter()
                .any(|other| strictly_majorizes(other, &own).expect("equal spread sizes give equal lengths"))
        })
        .collect()
}

/// Lexicographically first maximal admissible set.
pub fn select_extremal(inst: &Instance) -> Result<AdmissibleSet> {
    maximal_admissible_sets(inst).into_iter().next().ok_or(Error::NoAdmissibleSet)
}
