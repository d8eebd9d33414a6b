//! Matrices as maps `A x B -> R` over finite sets of positive integers.
//!
//! Rows and columns keep their labels through every restriction, so a
//! submatrix `M[A', B']` is addressed with the same indices as `M`. Whenever a
//! bijection between labels and positions is needed (determinants, products
//! with explicit arrays) the ascending order is used.

use std::fmt;
use std::ops::Index;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement, RingKind};

/// A finite set of positive integers, iterated in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds a set from arbitrary order; rejects zero and repeated labels.
    pub fn new(items: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        if v.first() == Some(&0) {
            return Err(Error::InvalidIndexSet(format!("{v:?} contains 0")));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("{v:?} has duplicates")));
        }
        Ok(IndexSet(v))
    }

    /// `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]) && v.first() != Some(&0));
        IndexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` in ascending order.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().merge(other.iter()).dedup().collect())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().filter(|&x| other.contains(x)).collect())
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn with(&self, x: usize) -> IndexSet {
        assert!(x > 0, "index labels are positive");
        self.union(&IndexSet(vec![x]))
    }

    pub fn without(&self, x: usize) -> IndexSet {
        IndexSet(self.iter().filter(|&y| y != x).collect())
    }
}

/// A bare label `a` stands for `{a}`.
impl From<usize> for IndexSet {
    fn from(a: usize) -> Self {
        assert!(a > 0, "index labels are positive");
        IndexSet(vec![a])
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A dense `rows x cols` matrix over a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedMatrix {
    ring: Ring,
    rows: IndexSet,
    cols: IndexSet,
    entries: Vec<RingElement>,
}

impl IndexedMatrix {
    pub fn new(ring: Ring, rows: IndexSet, cols: IndexSet, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring, e.ring()));
        }
        Ok(IndexedMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Builds the matrix entry by entry; `f` receives row and column labels.
    pub fn from_fn(ring: Ring, rows: IndexSet, cols: IndexSet, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let entries = rows
            .iter()
            .flat_map(|r| cols.iter().map(move |c| (r, c)))
            .map(|(r, c)| {
                let e = f(r, c);
                assert_eq!(e.ring(), ring, "entry from another ring");
                e
            })
            .collect();
        IndexedMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    /// Row-major entries with labels `1..=p` and `1..=q`.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let p = rows.len();
        let q = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != q) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(ring, IndexSet::range(p), IndexSet::range(q), rows.into_iter().flatten().collect())
    }

    /// Row-major integer entries mapped into `ring`, labels `1..=p`, `1..=q`.
    pub fn from_ints<R: AsRef<[i64]>>(ring: Ring, rows: &[R]) -> Result<Self> {
        Self::from_rows(
            ring,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| ring.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn identity(ring: Ring, rows: &IndexSet) -> Self {
        Self::from_fn(ring, rows.clone(), rows.clone(), |r, c| {
            if r == c {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    pub fn zeros(ring: Ring, rows: &IndexSet, cols: &IndexSet) -> Self {
        Self::from_fn(ring, rows.clone(), cols.clone(), |_, _| ring.zero())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&RingElement> {
        let i = self.rows.position(r)?;
        let j = self.cols.position(c)?;
        Some(&self.entries[i * self.cols.len() + j])
    }

    /// Entry by positions rather than labels.
    pub fn at(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn column(&self, c: usize) -> Vec<&RingElement> {
        self.rows.iter().map(|r| &self[(r, c)]).collect()
    }

    pub fn row(&self, r: usize) -> Vec<&RingElement> {
        self.cols.iter().map(|c| &self[(r, c)]).collect()
    }

    /// Rows as position-indexed vectors.
    pub fn to_rows(&self) -> Vec<Vec<RingElement>> {
        if self.cols.is_empty() {
            return vec![Vec::new(); self.rows.len()];
        }
        self.entries.chunks(self.cols.len()).map(<[_]>::to_vec).collect()
    }

    /// The restriction `M[A', B']`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<IndexedMatrix> {
        if !rows.is_subset(&self.rows) {
            return Err(Error::NotSubset(rows.clone(), self.rows.clone()));
        }
        if !cols.is_subset(&self.cols) {
            return Err(Error::NotSubset(cols.clone(), self.cols.clone()));
        }
        Ok(Self::from_fn(self.ring, rows.clone(), cols.clone(), |r, c| self[(r, c)].clone()))
    }

    pub fn matmul(&self, other: &IndexedMatrix) -> Result<IndexedMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply: columns {} vs rows {}",
                self.cols, other.rows
            )));
        }
        let inner = self.cols.len();
        let width = other.cols.len();
        let mut entries = Vec::with_capacity(self.rows.len() * width);
        for i in 0..self.rows.len() {
            for j in 0..width {
                let mut acc = self.ring.zero();
                for k in 0..inner {
                    let (a, b) = (self.at(i, k), other.at(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(IndexedMatrix {
            ring: self.ring,
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries,
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows.len(),
                cols: self.cols.len(),
            })
        }
    }

    /// Determinant under the ascending bijection between row and column labels.
    pub fn determinant(&self) -> Result<RingElement> {
        self.require_square()?;
        Ok(determinant_of(self.ring, &self.to_rows()))
    }

    /// Square and with a unit determinant.
    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    /// Two-sided inverse (labelled `cols x rows`), computed as adj(M) / det(M).
    /// `None` when the matrix is singular or not square.
    pub fn try_inverse(&self) -> Option<IndexedMatrix> {
        if !self.is_square() {
            return None;
        }
        let rows = self.to_rows();
        let det_inv = determinant_of(self.ring, &rows).try_inverse()?;
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        // inverse[j][i] = (-1)^(i+j) det(minor_ij) / det
        for j in 0..n {
            for i in 0..n {
                let minor: Vec<Vec<RingElement>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let mut cof = determinant_of(self.ring, &minor);
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                entries.push(&cof * &det_inv);
            }
        }
        Some(IndexedMatrix {
            ring: self.ring,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
        })
    }

    /// Elementary matrix scaling row `r` by the unit `u`.
    pub fn elementary_scale(ring: Ring, rows: &IndexSet, r: usize, u: &RingElement) -> Result<IndexedMatrix> {
        if !rows.contains(r) {
            return Err(Error::NotSubset(r.into(), rows.clone()));
        }
        if u.ring() != ring {
            return Err(Error::RingMismatch(ring, u.ring()));
        }
        if !u.is_unit() {
            return Err(Error::NotAUnit(u.clone()));
        }
        Ok(Self::from_fn(ring, rows.clone(), rows.clone(), |a, b| match (a == b, a == r) {
            (true, true) => u.clone(),
            (true, false) => ring.one(),
            _ => ring.zero(),
        }))
    }

    /// Elementary matrix adding `lambda` times row `source` to row `target`.
    pub fn elementary_add(
        ring: Ring,
        rows: &IndexSet,
        target: usize,
        source: usize,
        lambda: &RingElement,
    ) -> Result<IndexedMatrix> {
        for x in [target, source] {
            if !rows.contains(x) {
                return Err(Error::NotSubset(x.into(), rows.clone()));
            }
        }
        if target == source {
            return Err(Error::SameRow(target));
        }
        if lambda.ring() != ring {
            return Err(Error::RingMismatch(ring, lambda.ring()));
        }
        Ok(Self::from_fn(ring, rows.clone(), rows.clone(), |a, b| {
            if a == b {
                ring.one()
            } else if a == target && b == source {
                lambda.clone()
            } else {
                ring.zero()
            }
        }))
    }

    pub fn row_op_scale(&self, r: usize, u: &RingElement) -> Result<IndexedMatrix> {
        Self::elementary_scale(self.ring, &self.rows, r, u)?;
        Ok(Self::from_fn(self.ring, self.rows.clone(), self.cols.clone(), |a, c| {
            if a == r {
                u * &self[(a, c)]
            } else {
                self[(a, c)].clone()
            }
        }))
    }

    pub fn row_op_add(&self, target: usize, source: usize, lambda: &RingElement) -> Result<IndexedMatrix> {
        Self::elementary_add(self.ring, &self.rows, target, source, lambda)?;
        Ok(Self::from_fn(self.ring, self.rows.clone(), self.cols.clone(), |a, c| {
            if a == target {
                &self[(a, c)] + &(lambda * &self[(source, c)])
            } else {
                self[(a, c)].clone()
            }
        }))
    }

    /// Relabels rows: the row placed at position `i` is `order[i]` of `self`,
    /// and receives the label `self.rows()[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<IndexedMatrix> {
        if IndexSet::new(order.iter().copied())? != self.rows {
            return Err(Error::Dimension(format!("{order:?} is not a permutation of {}", self.rows)));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in order {
            entries.extend(self.row(r).into_iter().cloned());
        }
        Ok(IndexedMatrix {
            ring: self.ring,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
        })
    }

    /// If column `c` is a standard unit vector, the row holding its 1.
    pub fn unit_vector_row(&self, c: usize) -> Option<usize> {
        let mut hit = None;
        for r in self.rows.iter() {
            let e = &self[(r, c)];
            if e.is_one() && hit.is_none() {
                hit = Some(r);
            } else if !e.is_zero() {
                return None;
            }
        }
        hit
    }

    /// Number of distinct standard unit vectors among the columns.
    pub fn distinct_unit_columns(&self) -> usize {
        self.cols.iter().filter_map(|c| self.unit_vector_row(c)).unique().count()
    }

    /// Rows containing no unit entry.
    pub fn rows_without_units(&self) -> IndexSet {
        IndexSet(
            self.rows
                .iter()
                .filter(|&r| self.row(r).iter().all(|e| !e.is_unit()))
                .collect(),
        )
    }
}

impl Index<(usize, usize)> for IndexedMatrix {
    type Output = RingElement;

    /// Entry by labels. Panics when a label is outside the index sets.
    fn index(&self, (r, c): (usize, usize)) -> &RingElement {
        self.get(r, c)
            .unwrap_or_else(|| panic!("({r}, {c}) outside {} x {}", self.rows, self.cols))
    }
}

impl fmt::Display for IndexedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            writeln!(f, "[{}]", row.iter().join(", "))?;
        }
        Ok(())
    }
}

/// Determinant of a square array. Cofactor expansion up to 4x4; above that,
/// fraction-free Bareiss elimination on integer lifts (Z, Z/n, GF(p)) or
/// Gaussian elimination (Q).
pub(crate) fn determinant_of(ring: Ring, m: &[Vec<RingElement>]) -> RingElement {
    let n = m.len();
    if n <= 4 {
        return cofactor_det(ring, m);
    }
    match ring.kind() {
        RingKind::Rationals => {
            let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(RingElement::to_ratio).collect()).collect();
            ring.from_ratio(&gauss_det(&mut a)).expect("rational determinant")
        }
        _ => {
            let mut a: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| r.iter().map(|e| e.lift().expect("integral ring")).collect())
                .collect();
            ring.from_bigint(&bareiss_det(&mut a))
        }
    }
}

fn cofactor_det(ring: Ring, m: &[Vec<RingElement>]) -> RingElement {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RingElement>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &cofactor_det(ring, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn gauss_det(a: &mut [Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    det
}
