//! Prime-field arithmetic.
//!
//! Every kernel coordinate, local coefficient and message symbol lives in a
//! prime field `F_q`. Elements are stored as canonical residues in `[0, q)`, so
//! equality of [`Scalar`]s is plain integer equality.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("modulus {0} is not a prime")]
    CompositeModulus(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// A field element, held as its canonical residue.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps a value the caller knows to be reduced.
    pub(crate) fn from_residue(v: u32) -> Scalar {
        Scalar(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A dense vector over some prime field.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The prime field `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Field {
    q: u32,
}

impl TryFrom<u64> for Field {
    type Error = GaloisError;

    fn try_from(q: u64) -> Result<Self, Self::Error> {
        Field::new(q)
    }
}

impl From<Field> for u64 {
    fn from(f: Field) -> u64 {
        f.q as u64
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl Field {
    /// Builds `F_q`; fails unless `q` is a prime below `2^32`.
    ///
    /// ```
    /// use lnec::galois::{Field, GaloisError};
    /// assert_eq!(Field::new(3).unwrap().modulus(), 3);
    /// assert_eq!(Field::new(4), Err(GaloisError::CompositeModulus(4)));
    /// ```
    pub fn new(q: u64) -> Result<Field, GaloisError> {
        if q > u32::MAX as u64 {
            return Err(GaloisError::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(GaloisError::CompositeModulus(q));
        }
        Ok(Field { q: q as u32 })
    }

    pub fn modulus(self) -> u64 {
        self.q as u64
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(self, v: u64) -> Scalar {
        Scalar((v % self.q as u64) as u32)
    }

    /// Reduces a signed integer into the field.
    pub fn elem_signed(self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.q as i64) as u32)
    }

    /// Accepts `v` only if it is already a canonical residue.
    pub fn checked_elem(self, v: u64) -> Option<Scalar> {
        (v < self.q as u64).then_some(Scalar(v as u32))
    }

    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 as u64 + b.0 as u64;
        Scalar((s % self.q as u64) as u32)
    }

    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 as u64 + self.q as u64 - b.0 as u64;
        Scalar((s % self.q as u64) as u32)
    }

    pub fn neg(self, a: Scalar) -> Scalar {
        if a.0 == 0 {
            a
        } else {
            Scalar(self.q - a.0)
        }
    }

    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(((a.0 as u64 * b.0 as u64) % self.q as u64) as u32)
    }

    pub fn pow(self, a: Scalar, mut exp: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        if self.q == 1 {
            return Scalar::ZERO;
        }
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: `a^(q-2)`.
    pub fn inv(self, a: Scalar) -> Result<Scalar, GaloisError> {
        if a.is_zero() {
            return Err(GaloisError::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(self, a: Scalar, b: Scalar) -> Result<Scalar, GaloisError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn apply(self, a: Scalar, b: Scalar, op: ArithOp) -> Result<Scalar, GaloisError> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// `a + c·b`, the inner step of every elimination loop.
    pub fn mul_add(self, a: Scalar, c: Scalar, b: Scalar) -> Scalar {
        let s = a.0 as u64 + (c.0 as u64 * b.0 as u64) % self.q as u64;
        Scalar((s % self.q as u64) as u32)
    }

    /// All field elements in ascending residue order.
    pub fn elements(self) -> impl Iterator<Item = Scalar> + Clone {
        (0..self.q).map(Scalar)
    }

    pub fn nonzero_elements(self) -> impl Iterator<Item = Scalar> + Clone {
        (1..self.q).map(Scalar)
    }

    pub fn zero_vector(self, len: usize) -> Vector {
        vec![Scalar::ZERO; len]
    }

    /// The indicator vector `1_i` of length `len`.
    pub fn unit_vector(self, len: usize, i: usize) -> Vector {
        let mut v = vec![Scalar::ZERO; len];
        v[i] = Scalar::ONE;
        v
    }

    pub fn scale(self, c: Scalar, v: &[Scalar]) -> Vector {
        v.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `acc += c · v`, in place.
    pub fn axpy(self, acc: &mut [Scalar], c: Scalar, v: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.mul_add(*a, c, x);
        }
    }

    pub fn vec_add(self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn dot(self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter()
            .zip(b)
            .fold(Scalar::ZERO, |acc, (&x, &y)| self.mul_add(acc, x, y))
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n` (and `>= 2`).
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}
