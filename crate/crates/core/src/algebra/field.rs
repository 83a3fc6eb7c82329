use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;

use super::matrix::{bareiss_det, Matrix};
use crate::error::{Error, Result};

/// Commutative ring with a (possibly trivial) involution.
///
/// Arithmetic is by value; callers clone where an operand is reused.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_int(n: i64) -> Self;

    /// The involution: an additive, multiplicative, self-inverse map.
    fn conj(&self) -> Self;

    /// `self / d` when `d` divides `self` exactly.
    fn exact_div(&self, d: &Self) -> Option<Self>;

    /// Determinant of a square matrix; callers check the shape.
    fn det(m: &Matrix<Self>) -> Self {
        bareiss_det(m)
    }
}

pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Option<Self>;
}

/// Coefficient fields the toolkit computes over: ℚ, 𝔽_p and ℚ(i).
pub trait ScalarField: Field + Eq + Hash {
    fn characteristic() -> u64;
    fn spec() -> FieldSpec;
    fn parse(s: &str) -> Result<Self>;
    /// A random element with small height (finite fields: uniform).
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>>;
}

/// Field specifier as accepted on the command line: `Q`, `Qi`, `Fp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    GaussianRationals,
    Prime(u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::GaussianRationals => write!(f, "Qi"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Q" => Ok(FieldSpec::Rationals),
            "Qi" => Ok(FieldSpec::GaussianRationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .ok_or_else(|| Error::UnknownField(s.to_string()))?;
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownField(s.to_string()))?;
                if p >= 1 << 31 || !is_prime(p) {
                    return Err(Error::BadModulus(p));
                }
                Ok(FieldSpec::Prime(p as u32))
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `x^e` for a field element, negative exponents through the inverse.
pub fn pow<F: Field>(x: &F, e: i64) -> F {
    let mut base = if e < 0 {
        x.inv().expect("negative power of zero")
    } else {
        x.clone()
    };
    let mut e = e.unsigned_abs();
    let mut acc = F::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}
