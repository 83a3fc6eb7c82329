use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Field, Ring, ScalarField};
use super::laurent::{LaurentPoly, Monomial};
use super::matrix::{bareiss_det, Matrix};
use crate::error::{Error, Result};

/// Element of the fraction field `K(t_1, ..., t_r)` of the Laurent ring.
///
/// Univariate fractions are kept reduced with a canonical denominator
/// (monic, lowest exponent 0). Multivariate fractions are
/// only partially simplified; equality is by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction<K: ScalarField> {
    num: LaurentPoly<K>,
    den: LaurentPoly<K>,
}

impl<K: ScalarField> RationalFunction<K> {
    pub fn new(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("inverse"));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: LaurentPoly<K>) -> Self {
        let rank = p.rank();
        RationalFunction {
            num: p,
            den: LaurentPoly::constant(K::one(), rank),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(LaurentPoly::constant(c, 0))
    }

    pub fn numer(&self) -> &LaurentPoly<K> {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly<K> {
        &self.den
    }

    pub fn rank(&self) -> usize {
        self.num.rank().max(self.den.rank())
    }

    fn normalized(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Self {
        let rank = num.rank().max(den.rank());
        if num.is_zero() {
            return RationalFunction {
                num: LaurentPoly::zero_with_rank(rank),
                den: LaurentPoly::constant(K::one(), rank),
            };
        }
        let (mut num, mut den) = (num, den);
        if num.is_univariate() && den.is_univariate() {
            let g = num.gcd(&den).expect("univariate gcd");
            num = num.exact_quotient(&g).expect("gcd divides numerator");
            den = den.exact_quotient(&g).expect("gcd divides denominator");
        } else if let Some(q) = num.exact_quotient(&den) {
            num = q;
            den = LaurentPoly::constant(K::one(), rank);
        }
        // Push the unit part of the denominator into the numerator, leaving
        // it monic with lowest exponent 0.
        let m = den.terms().next().expect("nonzero denominator").0.clone();
        let c = den.leading().expect("nonzero denominator").1.clone();
        let cinv = c.inv().expect("nonzero coefficient");
        let minv = m.inv();
        den = den.shift(&minv).scale(&cinv).with_rank(rank);
        num = num.shift(&minv).scale(&cinv).with_rank(rank);
        RationalFunction { num, den }
    }

    pub fn involute(&self) -> Self {
        Self::normalized(self.num.involute(), self.den.involute())
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn as_polynomial(&self) -> Option<LaurentPoly<K>> {
        if let Some((c, m)) = self.den.as_monomial() {
            let cinv = c.inv()?;
            return Some(self.num.shift(&m.inv()).scale(&cinv));
        }
        self.num.exact_quotient(&self.den)
    }

    /// `(c, e)` when the fraction is the single term `c·t^e`.
    pub fn as_monomial_unit(&self) -> Option<(K, Vec<i32>)> {
        let p = self.as_polynomial()?;
        let (c, m) = p.as_monomial()?;
        Some((c, m.exponents(self.rank().max(1))))
    }

    /// `degree(numerator) - degree(denominator)` for univariate fractions.
    pub fn degree(&self) -> Result<i64> {
        if self.num.is_zero() {
            return Err(Error::UndefinedDegree);
        }
        Ok(self.num.degree()? - self.den.degree()?)
    }

    /// Substitute `t_i ↦ t^{w_i}`.
    pub fn specialize(&self, weights: &[i32]) -> Result<Self> {
        Self::new(self.num.specialize(weights), self.den.specialize(weights))
    }

    pub fn shift(&self, by: &Monomial) -> Self {
        RationalFunction {
            num: self.num.shift(by),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Parse `p` or `(p)/(q)` with `p`, `q` in the Laurent syntax.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = top_level_fraction_bar(s) {
            let num = strip_parens(&s[..k]);
            let den = strip_parens(&s[k + 1..]);
            let den = LaurentPoly::parse(den, rank)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Self::new(LaurentPoly::parse(num, rank)?, den);
        }
        Ok(Self::from_poly(LaurentPoly::parse(s, rank)?))
    }
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s)
}

/// Position of a `/` of the form `)/(` outside any parentheses.
fn top_level_fraction_bar(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 && k > 0 && bytes[k - 1] == b')' => return Some(k),
            _ => {}
        }
    }
    None
}

impl<K: ScalarField> PartialEq for RationalFunction<K> {
    fn eq(&self, o: &Self) -> bool {
        self.num.clone() * o.den.clone() == o.num.clone() * self.den.clone()
    }
}

impl<K: ScalarField> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<K: ScalarField> fmt::Debug for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: ScalarField> Add for RationalFunction<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num + o.num, self.den);
        }
        Self::normalized(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
    }
}

impl<K: ScalarField> Sub for RationalFunction<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: ScalarField> Mul for RationalFunction<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::from_poly(LaurentPoly::zero_with_rank(self.rank().max(o.rank())));
        }
        Self::normalized(self.num * o.num, self.den * o.den)
    }
}

impl<K: ScalarField> Div for RationalFunction<K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero rational function")
    }
}

impl<K: ScalarField> Neg for RationalFunction<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<K: ScalarField> Ring for RationalFunction<K> {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }
    fn conj(&self) -> Self {
        self.involute()
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }

    /// Clear denominators row by row, then run Bareiss over the Laurent ring.
    fn det(m: &Matrix<Self>) -> Self {
        let n = m.rows();
        let mut cleared = Matrix::zeros(n, n);
        let mut scale = LaurentPoly::one();
        for i in 0..n {
            let mut l = LaurentPoly::one();
            for j in 0..n {
                let d = m[(i, j)].denom();
                if d.is_one() || l.exact_quotient(d).is_some() {
                    continue;
                }
                l = if l.is_univariate() && d.is_univariate() {
                    let g = l.gcd(d).expect("univariate gcd");
                    (l * d.clone()).exact_quotient(&g).expect("gcd divides")
                } else {
                    l * d.clone()
                };
            }
            for j in 0..n {
                let e = &m[(i, j)];
                let factor = l.exact_quotient(e.denom()).expect("row lcm");
                cleared[(i, j)] = e.numer().clone() * factor;
            }
            scale = scale * l;
        }
        Self::normalized(bareiss_det(&cleared), scale)
    }
}

impl<K: ScalarField> Field for RationalFunction<K> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, F5};

    type R = RationalFunction<Rational>;

    fn r(s: &str) -> R {
        R::parse(s, 1).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(r("(t^2 - t + 1)/(t - 1)").degree().unwrap(), 1);
        assert_eq!(r("7").degree().unwrap(), 0);
        let unreduced = RationalFunction {
            num: LaurentPoly::<Rational>::parse("t^4 - 1", 1).unwrap(),
            den: LaurentPoly::parse("t^2 - 1", 1).unwrap(),
        };
        assert_eq!(unreduced.degree().unwrap(), 2);
        assert_eq!(r("(t^4 - 1)/(t^2 - 1)").degree().unwrap(), 2);
        assert_eq!(R::zero().degree(), Err(Error::UndefinedDegree));
    }

    #[test]
    fn reduction_is_canonical() {
        let a = r("(t^4 - 1)/(2*t^3 - 2*t)");
        assert_eq!(a.to_string(), "1/2*t + 1/2*t^-1");
        assert_eq!(a, r("1/2*t + 1/2*t^-1"));
        assert!(a.as_polynomial().is_some());
    }

    #[test]
    fn monomial_unit_detection() {
        assert_eq!(
            r("-t^3").as_monomial_unit(),
            Some((Rational::from_int(-1), vec![3]))
        );
        assert_eq!(
            r("(t^2 + 1)/(t^2 + 1)").as_monomial_unit(),
            Some((Rational::one(), vec![0]))
        );
        assert_eq!(r("t + 1").as_monomial_unit(), None);
        let m = RationalFunction::<F5>::parse("(2*t1*t2^-1)/(t1^3)", 2).unwrap();
        assert_eq!(m.as_monomial_unit(), Some((F5::new(2), vec![-2, -1])));
    }

    #[test]
    fn field_operations() {
        let a = r("(t^2 - t + 1)/(t - 1)");
        let b = r("(t + 1)/(t^3)");
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(a.clone() + b.clone() - b.clone(), a);
        assert_eq!(a.clone() * a.inv().unwrap(), R::one());
        assert_eq!(r("(2*t^2 - 2*t + 2)/(2*t - 2)").to_string(), "(t^2 - t + 1)/(t - 1)");
    }

    #[test]
    fn multivariate_equality_by_cross_multiplication() {
        let x = R::parse("(t1*t2 - 1)/(t1 - 1)", 2).unwrap();
        let y = R::parse("(t1^2*t2 - t1)/(t1^2 - t1)", 2).unwrap();
        assert_eq!(x, y);
    }
}
