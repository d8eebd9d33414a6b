//! Reduced echelon form in the extremal sense: among all `QM` with `Q`
//! invertible, one with the largest possible number of distinct standard unit
//! vectors as columns.
//!
//! The largest number `t` (the unit-column capacity) is found by exact search
//! over column subsets. A set `C` of `t` columns can be turned into `t`
//! distinct unit vectors iff `M[A, C]` can be completed to an invertible
//! matrix, iff its `t x t` minors generate the unit ideal:
//!
//! * over Z: the gcd of the minors is 1;
//! * over Z/n: the gcd of the minors together with `n` is 1;
//! * over a field: some minor is non-zero, i.e. the columns are independent.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::{determinant_of, IndexedMatrix};
use crate::rings::{extended_gcd, Ring, RingElement, RingKind};

/// `Q`, `QM` and the unit columns realising the capacity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonResult {
    pub q: IndexedMatrix,
    pub reduced: IndexedMatrix,
    pub t: usize,
    /// `(column, row)`: `reduced` has the standard unit vector of `row` in `column`.
    pub pivots: Vec<(usize, usize)>,
}

/// Maximum number of distinct standard unit vectors among the columns of
/// `QM`, over all invertible `Q`.
pub fn unit_column_capacity(m: &IndexedMatrix) -> usize {
    capacity_witness(m).len()
}

/// `true` iff `m` already attains its unit-column capacity.
pub fn is_reduced_echelon(m: &IndexedMatrix) -> bool {
    m.distinct_unit_columns() == unit_column_capacity(m)
}

/// Lexicographically smallest column subset of maximum size that can be made
/// into distinct unit vectors.
fn capacity_witness(m: &IndexedMatrix) -> Vec<usize> {
    if m.ring().is_field() {
        return field_pivot_columns(m);
    }
    let rows = m.to_rows();
    let cols = m.cols().as_slice();
    for t in (1..=rows.len().min(cols.len())).rev() {
        for subset in (0..cols.len()).combinations(t) {
            let block: Vec<Vec<RingElement>> =
                rows.iter().map(|r| subset.iter().map(|&j| r[j].clone()).collect()).collect();
            if minors_generate_unit_ideal(m.ring(), &block) {
                return subset.iter().map(|&j| cols[j]).collect();
            }
        }
    }
    Vec::new()
}

/// Whether the maximal minors of a tall `p x t` block generate the unit ideal.
pub(crate) fn minors_generate_unit_ideal(ring: Ring, block: &[Vec<RingElement>]) -> bool {
    let t = block.first().map_or(0, Vec::len);
    if t > block.len() {
        return false;
    }
    let mut g = match ring.kind() {
        RingKind::IntegersMod(n) | RingKind::PrimeField(n) => BigInt::from(n),
        _ => BigInt::zero(),
    };
    for rows in (0..block.len()).combinations(t) {
        let minor: Vec<Vec<RingElement>> = rows.iter().map(|&i| block[i].clone()).collect();
        let det = determinant_of(ring, &minor);
        if ring.kind() == RingKind::Rationals {
            if !det.is_zero() {
                return true;
            }
            continue;
        }
        g = g.gcd(&det.lift().expect("integral ring"));
        if g.is_one() {
            return true;
        }
    }
    false
}

/// Pivot columns of Gaussian elimination: the lexicographically first basis
/// of the column space.
fn field_pivot_columns(m: &IndexedMatrix) -> Vec<usize> {
    let mut work = m.to_rows();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for (j, c) in m.cols().iter().enumerate() {
        if next_row == work.len() {
            break;
        }
        let Some(p) = (next_row..work.len()).find(|&i| !work[i][j].is_zero()) else {
            continue;
        };
        work.swap(p, next_row);
        let inv = work[next_row][j].try_inverse().expect("non-zero field element");
        for i in next_row + 1..work.len() {
            let f = &work[i][j] * &inv;
            if f.is_zero() {
                continue;
            }
            for k in j..work[i].len() {
                let v = &work[i][k] - &(&f * &work[next_row][k]);
                work[i][k] = v;
            }
        }
        pivots.push(c);
        next_row += 1;
    }
    pivots
}

/// Invertible 2x2 `[[s, t], [u, v]]` taking `(a, b)` to `(g, 0)`.
fn bezout_step(ring: Ring, a: &RingElement, b: &RingElement) -> [[RingElement; 2]; 2] {
    if ring.is_field() {
        return match a.try_inverse() {
            Some(a_inv) => [[ring.one(), ring.zero()], [-(b * &a_inv), ring.one()]],
            None => [[ring.zero(), ring.one()], [ring.one(), ring.zero()]],
        };
    }
    let (x, y) = (a.lift().expect("integral ring"), b.lift().expect("integral ring"));
    let (g, s, t) = extended_gcd(&x, &y);
    let lift = |v: BigInt| ring.from_bigint(&v);
    [[lift(s), lift(t)], [lift(-(&y / &g)), lift(&x / &g)]]
}

/// Applies `[[s, t], [u, v]]` to rows `i` and `j` of `rows`.
fn combine_rows(rows: &mut [Vec<RingElement>], i: usize, j: usize, op: &[[RingElement; 2]; 2]) {
    for k in 0..rows[i].len() {
        let (a, b) = (rows[i][k].clone(), rows[j][k].clone());
        rows[i][k] = &(&op[0][0] * &a) + &(&op[0][1] * &b);
        rows[j][k] = &(&op[1][0] * &a) + &(&op[1][1] * &b);
    }
}

/// Constructs `Q` realising the capacity. The chosen columns become the unit
/// vectors of the first `t` rows, in order.
pub fn reduce(m: &IndexedMatrix) -> EchelonResult {
    let ring = m.ring();
    let chosen = capacity_witness(m);
    let t = chosen.len();
    let p = m.rows().len();
    let positions: Vec<usize> = chosen.iter().map(|&c| m.cols().position(c).expect("own column")).collect();
    let mut block: Vec<Vec<RingElement>> = m
        .to_rows()
        .into_iter()
        .map(|r| positions.iter().map(|&j| r[j].clone()).collect())
        .collect();
    let mut q = IndexedMatrix::identity(ring, m.rows()).to_rows();

    for j in 0..t {
        for i in j + 1..p {
            if block[i][j].is_zero() {
                continue;
            }
            let op = bezout_step(ring, &block[j][j], &block[i][j]);
            combine_rows(&mut block, j, i, &op);
            combine_rows(&mut q, j, i, &op);
        }
        let inv = block[j][j]
            .try_inverse()
            .expect("maximal minors generate the unit ideal, so the pivot is a unit");
        for row in [&mut block, &mut q] {
            row[j] = row[j].iter().map(|e| e * &inv).collect();
        }
        for i in (0..p).filter(|&i| i != j) {
            let f = block[i][j].clone();
            if f.is_zero() {
                continue;
            }
            for row in [&mut block, &mut q] {
                let pivot_row = row[j].clone();
                for (e, x) in row[i].iter_mut().zip(&pivot_row) {
                    *e = &*e - &(&f * x);
                }
            }
        }
    }

    let q = IndexedMatrix::new(ring, m.rows().clone(), m.rows().clone(), q.into_iter().flatten().collect())
        .expect("square transformation");
    let reduced = q.matmul(m).expect("conformable");
    let pivots: Vec<(usize, usize)> = chosen.iter().zip(m.rows().iter()).map(|(&c, r)| (c, r)).collect();
    debug_assert!(pivots.iter().all(|&(c, r)| reduced.unit_vector_row(c) == Some(r)));
    debug_assert_eq!(reduced.rows_without_units().len(), p - t);
    EchelonResult { q, reduced, t, pivots }
}

/// Heuristic unit-pivot elimination: repeatedly pick a unit entry in a row
/// that is not yet a pivot row, scale it to 1 and clear its column. Kept for
/// comparison with [`reduce`]; it can stop short of the capacity over rings
/// that are not local (e.g. Z/6 with the column `(2, 3)`).
pub fn greedy_reduce(m: &IndexedMatrix) -> EchelonResult {
    let ring = m.ring();
    let mut q = IndexedMatrix::identity(ring, m.rows());
    let mut work = m.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    loop {
        let found = m.cols().iter().find_map(|c| {
            m.rows()
                .iter()
                .filter(|r| pivots.iter().all(|&(_, pr)| pr != *r))
                .find(|&r| work[(r, c)].is_unit())
                .map(|r| (c, r))
        });
        let Some((c, r)) = found else { break };
        let inv = work[(r, c)].try_inverse().expect("unit");
        let mut ops = vec![IndexedMatrix::elementary_scale(ring, m.rows(), r, &inv).expect("unit scale")];
        for other in m.rows().iter().filter(|&x| x != r) {
            let f = &work[(other, c)] * &inv;
            if !f.is_zero() {
                ops.push(IndexedMatrix::elementary_add(ring, m.rows(), other, r, &-f).expect("distinct rows"));
            }
        }
        // scaling first, then clearing against the (now unit) pivot row
        let scale = ops.remove(0);
        work = scale.matmul(&work).expect("conformable");
        q = scale.matmul(&q).expect("conformable");
        for e in ops {
            work = e.matmul(&work).expect("conformable");
            q = e.matmul(&q).expect("conformable");
        }
        pivots.push((c, r));
    }
    EchelonResult {
        t: pivots.len(),
        q,
        reduced: work,
        pivots,
    }
}
