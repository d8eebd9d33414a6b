//! The connection graph of an admissible set.
//!
//! Vertices are the rows of `A` plus a distinguished origin `0`. An arrow
//! `(s, c, t)` runs from row `s` to row `t` through column `c`. With
//! `Â = ∪_{w_i ≤ 2} A_i`, `B̂ = ∪_{w_i ≤ 1} B_i` and `T = ∪_{w_i = 2} A_i`,
//! the base arrows `D ⊆ (Â ∪ {0}) × B̂ × Â` are those with
//!
//! * `(QM)[t, c]` a unit,
//! * `s ≠ t`,
//! * `s` the single row of `A_k` when `c` lies in a weight-1 block `B_k`,
//!   and `s = 0` otherwise.
//!
//! A path `α_1, ..., α_l` is clear when, for every `i < l`, column `c_i`
//! vanishes on the targets of `α_{i+1}, ..., α_l`. Layers grow backwards
//! from `T`: `D_1` holds the arrows into `T`, and `D_{k+1}` the new arrows
//! into a source of `D_k` that start a clear path to `T` inside
//! `D_1 ∪ ... ∪ D_k` plus themselves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::matrix::{IndexSet, IndexedMatrix};
use crate::transversal::{AdmissibleSet, Instance};

/// The distinguished vertex. Row labels are positive, so it never collides.
pub const ORIGIN: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub column: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(source: usize, column: usize, target: usize) -> Self {
        Arrow { source, column, target }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    /// No path from the origin to `T`.
    First,
    /// Shortest origin-to-`T` path has `distance` arrows.
    Second { distance: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionGraph {
    hat_rows: IndexSet,
    hat_cols: IndexSet,
    targets: IndexSet,
    base: Vec<Arrow>,
    layers: Vec<Vec<Arrow>>,
    kind: Kind,
    shortest: Option<Vec<Arrow>>,
}

impl ConnectionGraph {
    pub fn build(inst: &Instance, set: &AdmissibleSet) -> Self {
        let qm = set.reduced();
        let pi = inst.partition();
        let n = pi.len();
        let groups_where = |keep: &dyn Fn(usize) -> bool| {
            (1..=n)
                .filter(|&i| keep(set.weight(i)))
                .fold(IndexSet::empty(), |acc, i| acc.union(set.row_group(i)))
        };
        let hat_rows = groups_where(&|w| w <= 2);
        let targets = groups_where(&|w| w == 2);
        let hat_cols = (1..=n)
            .filter(|&i| set.weight(i) <= 1)
            .fold(IndexSet::empty(), |acc, i| acc.union(pi.block(i)));

        let mut base = Vec::new();
        for c in hat_cols.iter() {
            let k = pi.block_of(c).expect("partitioned column");
            let source = if set.weight(k) == 1 {
                set.row_group(k).iter().next().expect("weight-1 block has one row")
            } else {
                ORIGIN
            };
            for t in hat_rows.iter() {
                if t != source && qm[(t, c)].is_unit() {
                    base.push(Arrow::new(source, c, t));
                }
            }
        }
        base.sort();

        let mut layers: Vec<Vec<Arrow>> = Vec::new();
        let first: Vec<Arrow> = base.iter().copied().filter(|a| targets.contains(a.target)).collect();
        if !first.is_empty() {
            let mut used: BTreeSet<Arrow> = first.iter().copied().collect();
            layers.push(first);
            loop {
                let sources: BTreeSet<usize> = layers.last().expect("non-empty").iter().map(|a| a.source).collect();
                let pool: Vec<Arrow> = used.iter().copied().collect();
                let next: Vec<Arrow> = base
                    .iter()
                    .copied()
                    .filter(|a| !used.contains(a) && sources.contains(&a.target))
                    .filter(|a| has_clear_path(qm, &pool, *a, &targets))
                    .collect();
                if next.is_empty() {
                    break;
                }
                used.extend(next.iter().copied());
                layers.push(next);
            }
        }

        let mut graph = ConnectionGraph {
            hat_rows,
            hat_cols,
            targets,
            base,
            layers,
            kind: Kind::First,
            shortest: None,
        };
        graph.shortest = graph.shortest_origin_path(qm);
        if let Some(path) = &graph.shortest {
            graph.kind = Kind::Second { distance: path.len() };
        }
        graph
    }

    /// `Â`.
    pub fn hat_rows(&self) -> &IndexSet {
        &self.hat_rows
    }

    /// `B̂`.
    pub fn hat_cols(&self) -> &IndexSet {
        &self.hat_cols
    }

    /// `T`, the rows of weight-2 blocks.
    pub fn targets(&self) -> &IndexSet {
        &self.targets
    }

    /// `D`.
    pub fn base_arrows(&self) -> &[Arrow] {
        &self.base
    }

    /// `D_1, D_2, ...` (empty when `D_1` is).
    pub fn layers(&self) -> &[Vec<Arrow>] {
        &self.layers
    }

    /// `D_P`, the union of the layers.
    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.layers.iter().flatten()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn connection_distance(&self) -> Option<usize> {
        match self.kind {
            Kind::First => None,
            Kind::Second { distance } => Some(distance),
        }
    }

    /// A shortest origin-to-`T` path in `D_P`: the first clear one in the
    /// order of sorted arrows, or the first one if none is clear.
    pub fn shortest_path(&self) -> Option<&[Arrow]> {
        self.shortest.as_deref()
    }

    fn shortest_origin_path(&self, qm: &IndexedMatrix) -> Option<Vec<Arrow>> {
        let mut out: BTreeMap<usize, Vec<Arrow>> = BTreeMap::new();
        for a in self.arrows() {
            out.entry(a.source).or_default().push(*a);
        }
        for v in out.values_mut() {
            v.sort();
        }
        let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(ORIGIN, 0)]);
        let mut queue = VecDeque::from([ORIGIN]);
        let mut distance = None;
        while let Some(v) = queue.pop_front() {
            for a in out.get(&v).into_iter().flatten() {
                if depth.contains_key(&a.target) {
                    continue;
                }
                depth.insert(a.target, depth[&v] + 1);
                if self.targets.contains(a.target) {
                    distance = distance.or(Some(depth[&v] + 1));
                }
                queue.push_back(a.target);
            }
        }
        let distance = distance?;
        let mut paths = Vec::new();
        shortest_paths(&out, &self.targets, distance, &mut vec![], &mut paths);
        let first = paths.first().cloned();
        paths.into_iter().find(|p| is_clear_path(qm, p)).or(first)
    }

    /// Arrows of `D_P` lying on some path that ends in `T`.
    pub fn arrows_on_paths_to_targets(&self) -> Vec<Arrow> {
        let mut reach: BTreeSet<usize> = self.targets.iter().collect();
        loop {
            let before = reach.len();
            for a in self.arrows() {
                if reach.contains(&a.target) {
                    reach.insert(a.source);
                }
            }
            if reach.len() == before {
                break;
            }
        }
        self.arrows().copied().filter(|a| reach.contains(&a.target)).collect()
    }
}

/// Whether `path` is a directed path whose earlier columns vanish on all
/// later targets.
pub fn is_clear_path(qm: &IndexedMatrix, path: &[Arrow]) -> bool {
    let connected = path.windows(2).all(|w| w[0].target == w[1].source);
    connected
        && path
            .iter()
            .enumerate()
            .all(|(i, a)| path[i + 1..].iter().all(|later| qm[(later.target, a.column)].is_zero()))
}

/// All simple paths from the origin with `len` arrows whose last target is
/// in `targets`, in lexicographic order of arrows.
fn shortest_paths(
    out: &BTreeMap<usize, Vec<Arrow>>,
    targets: &IndexSet,
    len: usize,
    path: &mut Vec<Arrow>,
    found: &mut Vec<Vec<Arrow>>,
) {
    let at = path.last().map_or(ORIGIN, |a| a.target);
    if path.len() == len {
        if targets.contains(at) {
            found.push(path.clone());
        }
        return;
    }
    for a in out.get(&at).into_iter().flatten() {
        if a.target == ORIGIN || path.iter().any(|b| b.source == a.target || b.target == a.target) {
            continue;
        }
        path.push(*a);
        shortest_paths(out, targets, len, path, found);
        path.pop();
    }
}

/// Depth-first search for a clear path starting with `start`, using arrows
/// from `pool`, ending with an arrow into `targets`. Vertices are not repeated.
fn has_clear_path(qm: &IndexedMatrix, pool: &[Arrow], start: Arrow, targets: &IndexSet) -> bool {
    fn extend(qm: &IndexedMatrix, pool: &[Arrow], path: &mut Vec<Arrow>, seen: &mut Vec<usize>, targets: &IndexSet) -> bool {
        let last = *path.last().expect("non-empty path");
        if targets.contains(last.target) {
            return true;
        }
        for next in pool.iter().filter(|b| b.source == last.target) {
            if seen.contains(&next.target) {
                continue;
            }
            if path.iter().any(|a| !qm[(next.target, a.column)].is_zero()) {
                continue;
            }
            path.push(*next);
            seen.push(next.target);
            if extend(qm, pool, path, seen, targets) {
                return true;
            }
            path.pop();
            seen.pop();
        }
        false
    }
    let mut path = vec![start];
    let mut seen = vec![start.source, start.target];
    extend(qm, pool, &mut path, &mut seen, targets)
}
