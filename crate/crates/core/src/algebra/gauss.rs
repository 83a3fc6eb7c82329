use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed};
use rand::Rng;

use super::field::{Field, FieldSpec, Ring, ScalarField};
use super::matrix::{gauss_det, Matrix};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element `re + im·i` of ℚ(i), with complex conjugation as involution.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    fn norm(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |f: &mut fmt::Formatter<'_>, v: &Rational| {
            if v.0.abs().is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}i", v.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                im(f, &self.im)
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                im(f, &self.im)
            }
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        GaussRational::new(re, im)
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_int(n: i64) -> Self {
        GaussRational::new(Rational::from_int(n), Rational::zero())
    }
    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }
    fn det(m: &Matrix<Self>) -> Self {
        gauss_det(m)
    }
}

impl Field for GaussRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(GaussRational::new(
            c.re / n.clone(),
            c.im / n,
        ))
    }
}

impl ScalarField for GaussRational {
    fn characteristic() -> u64 {
        0
    }

    fn spec() -> FieldSpec {
        FieldSpec::GaussianRationals
    }

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with rational `a`, `b`.
    fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid Gaussian rational `{s}`"));
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRational::new(Rational::parse(&s)?, Rational::zero()));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (Rational::parse(&body[..k]).map_err(|_| bad())?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            v => Rational::parse(v.strip_prefix('+').unwrap_or(v)).map_err(|_| bad())?,
        };
        Ok(GaussRational::new(re, im))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        GaussRational::new(Rational::random(rng), Rational::random(rng))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        GaussRational::parse(s).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "3", "i", "-i", "2+i", "2-i", "1/2+3/4i", "-5/3i", "-2-7i"] {
            assert_eq!(g(s).to_string(), s, "{s}");
        }
        assert!(GaussRational::parse("2+ji").is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRational::i();
        assert_eq!(i.clone() * i, -GaussRational::one());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let a = g("2+i");
        let b = g("1/3-4i");
        assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.clone() * a.inv().unwrap(), GaussRational::one());
    }
}
