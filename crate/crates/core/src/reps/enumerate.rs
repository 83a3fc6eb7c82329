use rayon::prelude::*;

use super::Representation;
use crate::algebra::{Matrix, ScalarField};
use crate::error::{Error, Result};
use crate::fox::{GroupPresentation, MatrixImages};

/// A representation found by enumeration, tagged with absolute irreducibility.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumeratedRep<K: ScalarField> {
    pub rep: Representation<K>,
    pub irreducible: bool,
}

/// All of `SL(2, K)` for a finite prime field, in lexicographic entry order.
pub fn sl2_elements<K: ScalarField>() -> Result<Vec<Matrix<K>>> {
    let elems = K::elements().ok_or_else(|| Error::Unsupported("SL(2) enumeration needs a finite field".into()))?;
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    if (a.clone() * d.clone() - b.clone() * c.clone()).is_one() {
                        out.push(
                            Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
                                .expect("2x2"),
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sl2_inverse<K: ScalarField>(m: &Matrix<K>) -> Matrix<K> {
    Matrix::from_rows(vec![
        vec![m[(1, 1)].clone(), -m[(0, 1)].clone()],
        vec![-m[(1, 0)].clone(), m[(0, 0)].clone()],
    ])
    .expect("2x2")
}

/// Every pair `(A, B) ∈ SL(2, 𝔽_p)²` satisfying all relators of a
/// two-generator presentation, for `p ∈ {3, 5, 7}`. The outer loop over `A`
/// runs in parallel; the output order is deterministic.
pub fn enumerate_sl2_reps<K: ScalarField>(p: &GroupPresentation) -> Result<Vec<EnumeratedRep<K>>> {
    if p.generator_count() != 2 {
        return Err(Error::Unsupported(format!(
            "SL(2) enumeration needs 2 generators, got {}",
            p.generator_count()
        )));
    }
    let ch = K::characteristic();
    if ![3, 5, 7].contains(&ch) || K::elements().map(|e| e.len() as u64) != Some(ch) {
        return Err(Error::Unsupported(format!("SL(2) enumeration over {} (supported: Fp:3, Fp:5, Fp:7)", K::spec())));
    }
    let group = sl2_elements::<K>()?;
    let inverses: Vec<Matrix<K>> = group.iter().map(sl2_inverse).collect();
    let found: Vec<Vec<EnumeratedRep<K>>> = (0..group.len())
        .into_par_iter()
        .map(|i| {
            let mut local = Vec::new();
            for j in 0..group.len() {
                let images = MatrixImages::new(
                    vec![group[i].clone(), group[j].clone()],
                    vec![inverses[i].clone(), inverses[j].clone()],
                )
                .expect("SL(2) inverses");
                if images.check_relators(p).is_ok() {
                    let rep = Representation { images };
                    let irreducible = rep.is_irreducible();
                    local.push(EnumeratedRep { rep, irreducible });
                }
            }
            local
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, F3, F5};
    use crate::fox::knot_table;

    #[test]
    fn group_orders() {
        assert_eq!(sl2_elements::<F3>().unwrap().len(), 24);
        assert_eq!(sl2_elements::<F5>().unwrap().len(), 120);
        assert!(sl2_elements::<Rational>().is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        let unknot = knot_table("unknot").unwrap();
        assert!(matches!(enumerate_sl2_reps::<F5>(&unknot), Err(Error::Unsupported(_))));
        let trefoil = knot_table("trefoil").unwrap();
        assert!(matches!(enumerate_sl2_reps::<Rational>(&trefoil), Err(Error::Unsupported(_))));
    }
}
