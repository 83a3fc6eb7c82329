//! Twisted Alexander invariants and checks of their symmetry, degree and
//! polynomiality properties.

mod orders;
mod symmetry;
mod wada;

pub use orders::{alexander_order, order_matrices, torsion_via_orders, OrderValue};
pub use symmetry::{symmetry_check, SymmetryReport};
pub use wada::{wada_invariant, WadaResult};

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, LaurentPoly, RationalFunction, Ring, ScalarField};
use crate::error::{Error, Result};
use crate::reps::DetSubgroupData;

/// Outcome of a check whose search may be bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

/// Units `ε·f^d·a` by which two representatives may differ: `f` a monomial,
/// `a ∈ det(α(π))`, and `ε = -1` allowed only for odd `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Indeterminacy<K: ScalarField> {
    pub d: usize,
    pub det: DetSubgroupData<K>,
    pub sign_allowed: bool,
}

impl<K: ScalarField> Indeterminacy<K> {
    pub fn new(d: usize, det: DetSubgroupData<K>) -> Self {
        Indeterminacy { d, det, sign_allowed: d % 2 == 1 }
    }

    /// Whether `c·t^e` lies in the unit group.
    pub fn contains_unit(&self, c: &K, e: &[i32]) -> Verdict {
        if e.iter().any(|&x| x.rem_euclid(self.d as i32) != 0) {
            return Verdict::Fails;
        }
        let direct = self.det.contains(c);
        let negated = if self.sign_allowed { self.det.contains(&-c.clone()) } else { Some(false) };
        match (direct, negated) {
            (Some(true), _) | (_, Some(true)) => Verdict::Holds,
            (Some(false), Some(false)) => Verdict::Fails,
            _ => Verdict::Inconclusive,
        }
    }
}

/// A representative of `τ(N, α⊗φ)` together with its indeterminacy.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedAlexInvariant<K: ScalarField> {
    pub representative: RationalFunction<K>,
    pub indeterminacy: Indeterminacy<K>,
}

impl<K: ScalarField> TwistedAlexInvariant<K> {
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn degree(&self) -> Result<i64> {
        self.representative.degree()
    }

    pub fn rank(&self) -> usize {
        self.representative.rank()
    }
}

/// Whether `τ_1/τ_2` is a unit permitted by the indeterminacy.
pub fn unit_equiv<K: ScalarField>(
    t1: &RationalFunction<K>,
    t2: &RationalFunction<K>,
    ind: &Indeterminacy<K>,
) -> Verdict {
    match (t1.is_zero(), t2.is_zero()) {
        (true, true) => return Verdict::Holds,
        (true, false) | (false, true) => return Verdict::Fails,
        _ => {}
    }
    match (t1.clone() / t2.clone()).as_monomial_unit() {
        Some((c, e)) => ind.contains_unit(&c, &e),
        None => Verdict::Fails,
    }
}

/// Equality up to any unit `c·t^k` of `K[t^{±1}]` (orders are only defined
/// up to such units).
pub fn laurent_unit_equiv<K: ScalarField>(t1: &RationalFunction<K>, t2: &RationalFunction<K>) -> bool {
    match (t1.is_zero(), t2.is_zero()) {
        (true, true) => true,
        (false, false) => (t1.clone() / t2.clone()).as_monomial_unit().is_some(),
        _ => false,
    }
}

/// `deg τ ≡ d·x(φ) (mod 2)`.
pub fn degree_parity_check<K: ScalarField>(inv: &TwistedAlexInvariant<K>, d: usize, x_phi: i64) -> Result<bool> {
    if inv.is_zero() {
        return Err(Error::ZeroInput("degree parity"));
    }
    Ok((inv.degree()? - d as i64 * x_phi).rem_euclid(2) == 0)
}

/// A shift `t^k` making the representative a symmetric Laurent polynomial
/// `Σ_{i=0}^{l} a_i (t^{-i} + t^i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Palindrome<K> {
    pub shift: i32,
    /// `a_0, ..., a_l`; the constant term of the polynomial is `2·a_0`.
    pub coeffs: Vec<K>,
}

/// Symmetric normalization of a univariate Laurent polynomial representative.
/// Symmetry means `p(t^{-1}) = p(t)` on coefficients, without applying the
/// field involution. Returns `None` when no shift is symmetric.
pub fn palindromic_normalize<K: ScalarField>(inv: &TwistedAlexInvariant<K>) -> Result<Option<Palindrome<K>>> {
    let p = inv.representative.as_polynomial().ok_or(Error::NotPolynomial)?;
    if p.rank() > 1 {
        return Err(Error::NotUnivariate(p.rank()));
    }
    palindrome_of(&p)
}

pub fn palindrome_of<K: ScalarField>(p: &LaurentPoly<K>) -> Result<Option<Palindrome<K>>> {
    if p.is_zero() {
        return Ok(Some(Palindrome { shift: 0, coeffs: vec![K::zero()] }));
    }
    let (lo, hi) = p.span()?;
    if (lo + hi) % 2 != 0 {
        return Ok(None);
    }
    let shift = -(lo + hi) / 2;
    let (low, dense) = p.dense()?;
    let l = ((hi - lo) / 2) as usize;
    // dense[i] is the coefficient of t^{low + i}; after shifting the centre sits at index l.
    debug_assert_eq!(low, lo);
    if (0..=l).any(|i| dense[l + i] != dense[l - i]) {
        return Ok(None);
    }
    let centre = dense[l].clone();
    let a0 = if K::characteristic() == 2 {
        if !centre.is_zero() {
            return Err(Error::Unsupported("odd constant term in characteristic 2".into()));
        }
        K::zero()
    } else {
        centre / K::from_int(2)
    };
    let mut coeffs = vec![a0];
    coeffs.extend((1..=l).map(|i| dense[l + i].clone()));
    Ok(Some(Palindrome { shift, coeffs }))
}

impl<K: ScalarField> Palindrome<K> {
    /// `Σ a_i (t^{-i} + t^i)`.
    pub fn expand(&self) -> LaurentPoly<K> {
        let mut p = LaurentPoly::zero_with_rank(1);
        for (i, a) in self.coeffs.iter().enumerate() {
            let i = i as i32;
            p = p + LaurentPoly::monomial(a.clone(), &[i]) + LaurentPoly::monomial(a.clone(), &[-i]);
        }
        p
    }
}

fn sign<K: Field>(e: i64) -> K {
    if e.rem_euclid(2) == 0 {
        K::one()
    } else {
        -K::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, F5};

    type Q = Rational;

    fn r(s: &str) -> RationalFunction<Q> {
        RationalFunction::parse(s, 1).unwrap()
    }

    fn inv(s: &str, d: usize) -> TwistedAlexInvariant<Q> {
        TwistedAlexInvariant { representative: r(s), indeterminacy: Indeterminacy::new(d, DetSubgroupData::trivial()) }
    }

    #[test]
    fn unit_equivalence_examples() {
        let tau = r("(t^2 - t + 1)/(t - 1)");
        let one = Indeterminacy::new(1, DetSubgroupData::<Q>::trivial());
        let two = Indeterminacy::new(2, DetSubgroupData::<Q>::trivial());
        let minus_t2 = tau.clone() * r("-t^2");
        assert_eq!(unit_equiv(&tau, &minus_t2, &one), Verdict::Holds);
        assert_eq!(unit_equiv(&tau, &(tau.clone() * r("t")), &two), Verdict::Fails);
        assert_eq!(unit_equiv(&tau, &tau, &two), Verdict::Holds);
        assert_eq!(unit_equiv(&tau, &(tau.clone() * r("-1")), &two), Verdict::Fails);
        assert_eq!(unit_equiv(&tau, &(tau.clone() * r("t + 1")), &one), Verdict::Fails);
        let scaled = Indeterminacy::new(1, DetSubgroupData::new(vec![Q::from_int(3)]));
        assert_eq!(unit_equiv(&tau, &(tau.clone() * r("9")), &scaled), Verdict::Holds);
        assert_eq!(unit_equiv(&tau, &(tau.clone() * r("2")), &scaled), Verdict::Inconclusive);
        let f5 = Indeterminacy::new(2, DetSubgroupData::new(vec![F5::new(4)]));
        assert_eq!(f5.contains_unit(&F5::new(4), &[2]), Verdict::Holds);
        assert_eq!(f5.contains_unit(&F5::new(2), &[2]), Verdict::Fails);
    }

    #[test]
    fn degree_parity_examples() {
        assert!(degree_parity_check(&inv("(t^2 - t + 1)/(t - 1)", 1), 1, 1).unwrap());
        assert!(!degree_parity_check(&inv("(t^2 - t + 1)/(t - 1)", 1), 2, 1).unwrap());
        assert!(degree_parity_check(&inv("t^2 + 1", 2), 2, 7).unwrap());
        assert!(degree_parity_check(&inv("0", 2), 2, 1).is_err());
    }

    #[test]
    fn palindrome_examples() {
        let p = palindromic_normalize(&inv("t^-1 + 3 + t", 2)).unwrap().unwrap();
        assert_eq!(p, Palindrome { shift: 0, coeffs: vec![Q::new(3, 2), Q::one()] });
        let p = palindromic_normalize(&inv("t^2 + 1", 2)).unwrap().unwrap();
        assert_eq!(p, Palindrome { shift: -1, coeffs: vec![Q::zero(), Q::one()] });
        assert_eq!(p.expand(), LaurentPoly::parse("t + t^-1", 1).unwrap());
        assert_eq!(palindromic_normalize(&inv("t + 2", 2)).unwrap(), None);
        assert_eq!(palindromic_normalize(&inv("t^2 + t + 2", 2)).unwrap(), None);
        assert_eq!(palindromic_normalize(&inv("(1)/(t - 1)", 1)).unwrap_err(), Error::NotPolynomial);
    }
}
