use super::{unit_equiv, Indeterminacy, TwistedAlexInvariant, Verdict};
use crate::algebra::{LaurentPoly, Matrix, RationalFunction, Ring, ScalarField};
use crate::error::{Error, Result};
use crate::fox::{fox_jacobian, presentation_complex, AbelianizationMap, GroupPresentation};
use crate::reps::Representation;

/// Both computations of the twisted invariant of a deficiency-one
/// presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct WadaResult<K: ScalarField> {
    pub invariant: TwistedAlexInvariant<K>,
    /// `(j, det A_j / det((α⊗φ)(x_j) - I))` for every column `j` with a
    /// nonzero denominator.
    pub minor_ratios: Vec<(usize, RationalFunction<K>)>,
    /// Torsion of the twisted presentation complex (zero if not acyclic).
    pub torsion: RationalFunction<K>,
    pub acyclic: bool,
}

/// Twisted invariant of `(P, α, φ)` by the Fox-Jacobian minor ratio, checked
/// against the torsion of the twisted presentation complex.
///
/// The representative is the ratio for the first admissible column, or the
/// torsion when no column has a nonzero denominator. Every admissible column
/// and the torsion must agree up to the indeterminacy units; a disagreement
/// is reported as an internal error.
pub fn wada_invariant<K: ScalarField>(
    p: &GroupPresentation,
    rep: &Representation<K>,
    phi: &AbelianizationMap,
) -> Result<WadaResult<K>> {
    p.require_deficiency_one()?;
    rep.validate(p)?;
    let d = rep.dim();
    let n = p.generator_count();
    let rho = rep.tensor_with_phi(phi)?;
    let rank = phi.rank();
    let lift = |x: &LaurentPoly<K>| RationalFunction::from_poly(x.clone());

    let jac = fox_jacobian(p, &rho)?;
    let rows = jac.rows();
    let mut minor_ratios = Vec::new();
    for j in 0..n {
        let den = (rho.image(j) - &Matrix::identity(d)).det()?;
        if den.is_zero() {
            continue;
        }
        let keep: Vec<usize> = (0..n * d).filter(|c| c / d != j).collect();
        let minor = jac.select_cols(&keep);
        debug_assert_eq!(minor.shape(), (rows, rows));
        let num = minor.det()?;
        let ratio = RationalFunction::new(num.with_rank(rank), den.with_rank(rank))?;
        minor_ratios.push((j, ratio));
    }

    let complex = presentation_complex(p, &rho.map(lift))?;
    let tv = complex.invariant_torsion()?;
    let torsion = if tv.value.is_zero() {
        RationalFunction::from_poly(LaurentPoly::zero_with_rank(rank))
    } else {
        tv.value
    };
    let indeterminacy = Indeterminacy::new(d, rep.det_data());
    for (j, ratio) in &minor_ratios {
        let v = unit_equiv(ratio, &torsion, &indeterminacy);
        if v != Verdict::Holds {
            return Err(Error::Internal(format!(
                "minor ratio for column {j} ({ratio}) and presentation torsion ({torsion}) differ: {v:?}"
            )));
        }
    }
    let representative = minor_ratios.first().map_or_else(|| torsion.clone(), |(_, r)| r.clone());
    Ok(WadaResult {
        invariant: TwistedAlexInvariant { representative, indeterminacy },
        minor_ratios,
        torsion,
        acyclic: tv.acyclic,
    })
}
