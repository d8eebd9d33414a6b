//! Seeded random instances.
//!
//! The stream comes from PCG32 (`XSH RR 64/32`, stream constant
//! [`PCG_STREAM`]) so that corpora can be reproduced elsewhere from the seed.
//! Bounded integers are drawn by rejection on 64-bit words built from two
//! consecutive outputs, high word first.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_pcg::rand_core::Rng;
use rand_pcg::Pcg32;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::rings::{Ring, RingKind};
use crate::transversal::{hypothesis_holds, ColumnPartition, Instance};

pub const PRNG_ALGORITHM: &str = "pcg32";
pub const PCG_STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;
/// Rejection-sampling attempts before [`generate`] gives up.
pub const ATTEMPT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceSpec {
    pub ring: Ring,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    /// Integer entries lie in `[-bound, bound]`; rational denominators in `[1, bound]`.
    pub entry_bound: u64,
    pub seed: u64,
}

/// A generated instance with the number of draws it took.
#[derive(Clone, Debug)]
pub struct Generated {
    pub instance: Instance,
    pub attempts: usize,
}

pub struct Sampler(Pcg32);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(Pcg32::new(seed, PCG_STREAM))
    }

    pub fn next_u64(&mut self) -> u64 {
        let hi = self.0.next_u32() as u64;
        let lo = self.0.next_u32() as u64;
        (hi << 32) | lo
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
    }
}

fn validate(spec: &InstanceSpec) -> Result<()> {
    if spec.p == 0 || spec.n == 0 || spec.n > spec.q {
        return Err(Error::Dimension(format!(
            "need 1 <= p and 1 <= n <= q, got p = {}, q = {}, n = {}",
            spec.p, spec.q, spec.n
        )));
    }
    let needs_bound = matches!(spec.ring.kind(), RingKind::Integers | RingKind::Rationals);
    if needs_bound && (spec.entry_bound == 0 || spec.entry_bound > i64::MAX as u64 / 2) {
        return Err(Error::Dimension(format!("entry bound {} out of range", spec.entry_bound)));
    }
    Ok(())
}

fn draw(spec: &InstanceSpec, rng: &mut Sampler) -> Result<Instance> {
    let ring = spec.ring;
    let b = spec.entry_bound as i64;
    let rows: Vec<Vec<_>> = (0..spec.p)
        .map(|_| {
            (0..spec.q)
                .map(|_| match ring.kind() {
                    RingKind::Integers => ring.from_i64(rng.between(-b, b)),
                    RingKind::IntegersMod(n) | RingKind::PrimeField(n) => ring.from_i64(rng.below(n) as i64),
                    RingKind::Rationals => {
                        let num = rng.between(-b, b);
                        let den = rng.between(1, b);
                        ring.from_ratio(&BigRational::new(BigInt::from(num), BigInt::from(den)))
                            .expect("rationals accept every ratio")
                    }
                })
                .collect()
        })
        .collect();
    let matrix = IndexedMatrix::from_rows(ring, rows)?;
    let mut order: Vec<usize> = (1..=spec.q).collect();
    rng.shuffle(&mut order);
    let mut blocks = vec![Vec::new(); spec.n];
    for (i, &c) in order.iter().enumerate() {
        let b = if i < spec.n { i } else { rng.below(spec.n as u64) as usize };
        blocks[b].push(c);
    }
    let blocks = blocks.into_iter().map(IndexSet::new).collect::<Result<Vec<_>>>()?;
    let partition = ColumnPartition::new(blocks, matrix.cols())?;
    Instance::new(matrix, partition)
}

/// Draws instances from `spec.seed` until one satisfies the hypothesis (when
/// required) or [`ATTEMPT_CAP`] draws have been made.
pub fn generate(spec: &InstanceSpec, require_hypothesis: bool) -> Result<Generated> {
    validate(spec)?;
    let mut rng = Sampler::new(spec.seed);
    for attempts in 1..=ATTEMPT_CAP {
        let instance = draw(spec, &mut rng)?;
        if !require_hypothesis || hypothesis_holds(&instance) {
            return Ok(Generated { instance, attempts });
        }
    }
    Err(Error::AttemptCapExceeded(ATTEMPT_CAP))
}
