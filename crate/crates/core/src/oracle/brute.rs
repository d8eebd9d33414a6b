//! Exhaustive search over `GL(p, Z/n)` with native arithmetic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::IndexedMatrix;

/// Largest group enumeration attempted: `n^(p*p)` candidate matrices.
pub const SEARCH_LIMIT: u128 = 300_000;

type Square = Vec<Vec<u64>>;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Leibniz determinant mod `n`.
fn det_mod(a: &Square, n: u64) -> u64 {
    let p = a.len();
    let mut perm: Vec<usize> = (0..p).collect();
    let mut total: u64 = 0;
    permute(&mut perm, 0, &mut |perm| {
        let inversions = (0..p)
            .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = (0..p).fold(1u64, |acc, i| acc * a[i][perm[i]] % n);
        total = if inversions % 2 == 0 {
            (total + term) % n
        } else {
            (total + n - term) % n
        };
    });
    total % n
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// All invertible `p x p` matrices over `Z/n`, enumerated in base-`n`
/// counting order over row-major entries.
pub fn general_linear_group(n: u64, p: usize) -> Result<Vec<Square>> {
    let size = (n as u128).checked_pow((p * p) as u32).unwrap_or(u128::MAX);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size });
    }
    let mut out = Vec::new();
    for code in 0..size as u64 {
        let mut x = code;
        let a: Square = (0..p)
            .map(|_| {
                (0..p)
                    .map(|_| {
                        let d = x % n;
                        x /= n;
                        d
                    })
                    .collect()
            })
            .collect();
        if gcd(det_mod(&a, n), n) == 1 {
            out.push(a);
        }
    }
    Ok(out)
}

/// Number of distinct standard unit vectors among the columns of `QM`.
fn unit_columns(q: &Square, m: &Square, n: u64) -> usize {
    let p = q.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut seen = BTreeSet::new();
    for c in 0..cols {
        let col: Vec<u64> = (0..p)
            .map(|i| (0..p).fold(0, |acc, k| (acc + q[i][k] * m[k][c]) % n))
            .collect();
        let ones: Vec<usize> = (0..p).filter(|&i| col[i] == 1 % n).collect();
        if ones.len() == 1 && col.iter().filter(|&&v| v != 0).count() == 1 {
            seen.insert(ones[0]);
        }
    }
    seen.len()
}

/// Residues of a matrix over `Z/n` or `GF(p)`, with the modulus.
fn residues(m: &IndexedMatrix) -> Result<(u64, Square)> {
    let n = m
        .ring()
        .modulus()
        .ok_or_else(|| Error::Unsupported(format!("brute force needs a finite ring, got {}", m.ring())))?;
    let rows = m
        .to_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e.to_string().parse::<u64>().expect("residue literal"))
                .collect()
        })
        .collect();
    Ok((n, rows))
}

/// The maximum over invertible `Q` of the number of distinct standard unit
/// columns of `QM`, by enumerating the whole group.
pub fn t_max_bruteforce(m: &IndexedMatrix) -> Result<usize> {
    let (n, a) = residues(m)?;
    let group = general_linear_group(n, a.len())?;
    Ok(t_max_over(&group, &a, n))
}

/// Same as [`t_max_bruteforce`] with a precomputed group, for corpus runs.
pub fn t_max_with_group(group: &[Square], m: &IndexedMatrix) -> Result<usize> {
    let (n, a) = residues(m)?;
    if group.first().is_some_and(|g| g.len() != a.len()) {
        return Err(Error::Dimension("group and matrix sizes differ".into()));
    }
    Ok(t_max_over(group, &a, n))
}

fn t_max_over(group: &[Square], a: &Square, n: u64) -> usize {
    let cap = a.len().min(a.first().map_or(0, Vec::len));
    let mut best = 0;
    for q in group {
        best = best.max(unit_columns(q, a, n));
        if best == cap {
            break;
        }
    }
    best
}
