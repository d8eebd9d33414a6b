//! Commutative coefficient rings with exact arithmetic: the integers, the
//! residue rings Z/n, prime fields GF(p) and the rationals.
//!
//! Every element is stored in canonical form (residues in `[0, n)`, reduced
//! fractions with positive denominator), so structural equality is ring
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A supported coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingKind", into = "RingKind")]
pub struct Ring {
    kind: RingKind,
}

/// The four ring families. Serialized as `"Z"`, `{"Zmod": n}`, `{"GF": p}`
/// and `"Q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zmod")]
    IntegersMod(u64),
    #[serde(rename = "GF")]
    PrimeField(u64),
    #[serde(rename = "Q")]
    Rationals,
}

impl TryFrom<RingKind> for Ring {
    type Error = Error;

    fn try_from(kind: RingKind) -> Result<Self> {
        Ring::new(kind)
    }
}

impl From<Ring> for RingKind {
    fn from(ring: Ring) -> Self {
        ring.kind
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub const INTEGERS: Ring = Ring {
        kind: RingKind::Integers,
    };
    pub const RATIONALS: Ring = Ring {
        kind: RingKind::Rationals,
    };

    pub fn new(kind: RingKind) -> Result<Self> {
        match kind {
            RingKind::IntegersMod(n) if n < 2 => Err(Error::InvalidModulus(n)),
            RingKind::PrimeField(p) if !is_prime(p) => Err(Error::NotPrime(p)),
            _ => Ok(Ring { kind }),
        }
    }

    pub fn integers_mod(n: u64) -> Result<Self> {
        Self::new(RingKind::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::new(RingKind::PrimeField(p))
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// The modulus of Z/n or GF(p).
    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::PrimeField(_) | RingKind::Rationals)
    }

    /// True for Z/n and GF(p).
    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> RingElement {
        self.from_bigint(&BigInt::from(x))
    }

    /// Image of an integer under the canonical map Z -> R.
    pub fn from_bigint(&self, x: &BigInt) -> RingElement {
        let value = match self.kind {
            RingKind::Integers => Value::Int(x.clone()),
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => {
                let r = x.mod_floor(&BigInt::from(n));
                Value::Residue(r.to_u64().expect("residue below a u64 modulus"))
            }
            RingKind::Rationals => Value::Rat(BigRational::from_integer(x.clone())),
        };
        RingElement { ring: *self, value }
    }

    /// Rationals accept any fraction; the other rings only integral values.
    pub fn from_ratio(&self, x: &BigRational) -> Result<RingElement> {
        match self.kind {
            RingKind::Rationals => Ok(RingElement {
                ring: *self,
                value: Value::Rat(x.clone()),
            }),
            _ if x.is_integer() => Ok(self.from_bigint(x.numer())),
            _ => Err(Error::Parse(format!("{x} is not an element of {self}"))),
        }
    }

    /// Parses an integer literal, or `a/b` over the rationals.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad ring element literal {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                self.from_ratio(&BigRational::new(a, b))
            }
            None => {
                let a: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&a))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::IntegersMod(n) => write!(f, "Z/{n}"),
            RingKind::PrimeField(p) => write!(f, "GF({p})"),
            RingKind::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Residue(u64),
    Rat(BigRational),
}

/// An element of a [`Ring`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(x) => x.is_zero(),
            Value::Residue(x) => *x == 0,
            Value::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(x) => x.is_one(),
            Value::Residue(x) => *x == 1,
            Value::Rat(x) => x.is_one(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match (&self.value, self.ring.kind) {
            (Value::Int(x), _) => x.abs().is_one(),
            (Value::Residue(x), RingKind::IntegersMod(n)) => x.gcd(&n) == 1,
            (Value::Residue(x), _) => *x != 0,
            (Value::Rat(x), _) => !x.is_zero(),
        }
    }

    /// Neither zero nor a unit.
    pub fn is_nonzero_nonunit(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn try_inverse(&self) -> Option<RingElement> {
        if !self.is_unit() {
            return None;
        }
        let value = match &self.value {
            Value::Int(x) => Value::Int(x.clone()),
            Value::Residue(x) => {
                let n = self.ring.modulus().expect("residues live in Z/n");
                let (_, s, _) = extended_gcd(&BigInt::from(*x), &BigInt::from(n));
                let s = s.mod_floor(&BigInt::from(n));
                Value::Residue(s.to_u64().expect("residue below modulus"))
            }
            Value::Rat(x) => Value::Rat(x.recip()),
        };
        Some(RingElement {
            ring: self.ring,
            value,
        })
    }

    /// Integer representative: the value itself over Z, the residue in
    /// `[0, n)` over Z/n and GF(p). `None` over Q.
    pub fn lift(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(x) => Some(x.clone()),
            Value::Residue(x) => Some(BigInt::from(*x)),
            Value::Rat(_) => None,
        }
    }

    /// The element as a rational number (residues map to their representative).
    pub fn to_ratio(&self) -> BigRational {
        match &self.value {
            Value::Int(x) => BigRational::from_integer(x.clone()),
            Value::Residue(x) => BigRational::from_integer(BigInt::from(*x)),
            Value::Rat(x) => x.clone(),
        }
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.combine(other, Op::Add))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.combine(other, Op::Sub))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.combine(other, Op::Mul))
    }

    fn combine(&self, other: &RingElement, op: Op) -> RingElement {
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Value::Residue(a), Value::Residue(b)) => {
                let n = self.ring.modulus().expect("residues live in Z/n") as u128;
                let (a, b) = (*a as u128, *b as u128);
                let r = match op {
                    Op::Add => (a + b) % n,
                    Op::Sub => (a + n - b) % n,
                    Op::Mul => (a * b) % n,
                };
                Value::Residue(r as u64)
            }
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            _ => panic!("ring mismatch: {} vs {}", self.ring, other.ring),
        };
        RingElement {
            ring: self.ring,
            value,
        }
    }

    fn negated(&self) -> RingElement {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Residue(a) => {
                let n = self.ring.modulus().expect("residues live in Z/n");
                Value::Residue((n - a) % n)
            }
            Value::Rat(a) => Value::Rat(-a),
        };
        RingElement {
            ring: self.ring,
            value,
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

// Operator forms panic on a ring mismatch; use the `checked_*` methods when
// the operands are not known to share a ring.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.combine(rhs, Op::Add)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.combine(rhs, Op::Sub)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.combine(rhs, Op::Mul)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.negated()
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.negated()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(x) => write!(f, "{x}"),
            Value::Residue(x) => write!(f, "{x}"),
            Value::Rat(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Value::Rat(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(a, b) = s*a + t*b` and
/// `g >= 0`. `(0, 0)` maps to `(0, 0, 0)`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if a.is_zero() && b.is_zero() {
        return (BigInt::zero(), BigInt::zero(), BigInt::zero());
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
