use crate::algebra::{snf_univariate, LaurentPoly, Matrix, RationalFunction, Ring, ScalarField};
use crate::error::{Error, Result};
use crate::fox::{fox_jacobian, AbelianizationMap, GroupPresentation};
use crate::reps::Representation;

/// Order of a twisted homology module, normalized to lowest exponent 0 and
/// lowest coefficient 1 (or zero when the module has a free part).
#[derive(Clone, Debug, PartialEq)]
pub struct OrderValue<K: ScalarField> {
    pub index: usize,
    pub polynomial: LaurentPoly<K>,
}

/// Boundary matrices `(D_0, D_1)` of the twisted presentation complex over
/// `K[t^{±1}]`, in the column convention: `D_0` is `d × nd` with blocks
/// `(ρ(x_j) - I)^T`, and `D_1` is the transposed Fox Jacobian.
pub fn order_matrices<K: ScalarField>(
    p: &GroupPresentation,
    rep: &Representation<K>,
    phi: &AbelianizationMap,
) -> Result<(Matrix<LaurentPoly<K>>, Matrix<LaurentPoly<K>>)> {
    let rho = rep.tensor_with_phi(phi)?;
    let d = rep.dim();
    let n = p.generator_count();
    let mut d0 = Matrix::zeros(d, n * d);
    for j in 0..n {
        let block = (rho.image(j) - &Matrix::identity(d)).transpose();
        d0.set_block(0, j * d, &block);
    }
    let d1 = fox_jacobian(p, &rho)?.transpose();
    Ok((d0, d1))
}

/// `Δ_i` for `i ∈ {0, 1}` and `φ` of rank one.
///
/// `Δ_0` is the product of the elementary divisors of `D_0` when it has full
/// rank. Since `ker D_0` is a direct summand of a free module, the torsion of
/// `H_1` is the torsion of `coker D_1` restricted to it, so `Δ_1` is the
/// product of the nonzero divisors of `D_1` when `rank D_1 = rank ker D_0`.
pub fn alexander_order<K: ScalarField>(
    p: &GroupPresentation,
    rep: &Representation<K>,
    phi: &AbelianizationMap,
    index: usize,
) -> Result<OrderValue<K>> {
    if phi.rank() != 1 {
        return Err(Error::NotUnivariate(phi.rank()));
    }
    if index > 1 {
        return Err(Error::Unsupported(format!("order Δ_{index} (only Δ_0 and Δ_1)")));
    }
    rep.validate(p)?;
    let (d0, d1) = order_matrices(p, rep, phi)?;
    let s0 = snf_univariate(&d0)?;
    let full = if index == 0 {
        (s0.rank == d0.rows()).then(|| s0.nonzero_product())
    } else {
        let s1 = snf_univariate(&d1)?;
        (d0.cols() - s0.rank == s1.rank).then(|| s1.nonzero_product())
    };
    let polynomial = match full {
        Some(q) => q.unit_normalize()?.0,
        None => LaurentPoly::zero_with_rank(1),
    };
    Ok(OrderValue { index, polynomial })
}

/// `Δ_1/Δ_0` for manifolds with boundary, or `Δ_1/(Δ_0^α Δ_0^β)` with `β`
/// the dual representation for closed manifolds.
pub fn torsion_via_orders<K: ScalarField>(
    p: &GroupPresentation,
    rep: &Representation<K>,
    phi: &AbelianizationMap,
    closed: bool,
) -> Result<RationalFunction<K>> {
    let d1 = alexander_order(p, rep, phi, 1)?.polynomial;
    let mut den = alexander_order(p, rep, phi, 0)?.polynomial;
    if closed {
        den = den * alexander_order(p, &rep.dual(), phi, 0)?.polynomial;
    }
    if den.is_zero() {
        return Err(Error::Hypothesis("Δ_0 vanishes".into()));
    }
    RationalFunction::new(d1, den)
}
