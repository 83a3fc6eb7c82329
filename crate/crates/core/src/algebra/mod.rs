//! Exact arithmetic: scalar fields with involution, Laurent polynomials and
//! their fractions, dense matrices and Smith normal form over `K[t^{±1}]`.

mod field;
mod fp;
mod gauss;
mod laurent;
mod matrix;
mod ratfunc;
mod rational;
mod snf;

pub use field::{is_prime, pow, Field, FieldSpec, Ring, ScalarField};
pub use fp::{set_runtime_modulus, ConstModulus, Fp, Modulus, RuntimeModulus, F101, F3, F5, F7};
pub use gauss::GaussRational;
pub use laurent::{LaurentPoly, Monomial};
pub use matrix::{bareiss_det, gauss_det, Matrix};
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use snf::{snf_univariate, SmithForm};

/// Split a nonzero univariate `p` as `unit·canonical`, where `canonical` has
/// lowest exponent 0 and lowest coefficient 1.
pub fn unit_normalize<K: ScalarField>(
    p: &LaurentPoly<K>,
) -> crate::Result<(LaurentPoly<K>, LaurentPoly<K>)> {
    p.unit_normalize()
}

/// `Some((c, e))` when `f = c·t^e`.
pub fn is_monomial_unit<K: ScalarField>(f: &RationalFunction<K>) -> Option<(K, Vec<i32>)> {
    f.as_monomial_unit()
}
