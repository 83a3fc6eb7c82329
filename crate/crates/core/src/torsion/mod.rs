//! Torsion of based chain complexes over a field with involution.
//!
//! A complex of length `m` has chain groups `C_0, ..., C_m` and boundary
//! maps `∂_i: C_{i+1} → C_i` for `i = 0, ..., m-1`, stored as
//! `dim C_i × dim C_{i+1}` matrices in the distinguished bases (a vector is
//! a column of coordinates).

mod sample;
mod serial;
mod ses;

pub use sample::{random_complex, random_invertible, random_ses, RandomSes};
pub use serial::{ComplexRecord, ParseEntry};
pub use ses::{long_exact_sequence, ses_sign, ses_torsion_check};

use crate::algebra::{pow, Field, Matrix, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Finite chain complex of based vector spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedComplex<F: Field> {
    dims: Vec<usize>,
    boundaries: Vec<Matrix<F>>,
    homology_bases: Option<Vec<Matrix<F>>>,
}

/// Torsion together with the acyclicity flag. A zero value marks the
/// "invariant" convention for complexes with nonvanishing homology.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue<F> {
    pub value: F,
    pub acyclic: bool,
}

/// The integers `α_i`, `β_i`, `η` and `r` attached to a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignData {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub eta: i64,
    pub r: i64,
}

/// Homology in one degree: its dimension and cycle representatives.
#[derive(Clone, Debug)]
pub struct HomologyGroup<F: Field> {
    pub dim: usize,
    pub representatives: Matrix<F>,
}

fn sign<F: Field>(e: i64) -> F {
    if e.rem_euclid(2) == 0 {
        F::one()
    } else {
        -F::one()
    }
}

/// `x^{(-1)^k}`.
fn alternate<F: Field>(x: F, k: i64) -> Result<F> {
    if k.rem_euclid(2) == 0 {
        Ok(x)
    } else {
        x.inv().ok_or(Error::Singular)
    }
}

/// Partial alternating sums `Σ_{j≤i} (-1)^{i-j} d_j`.
pub fn alternating_sums(dims: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0i64;
    for &d in dims {
        acc = d as i64 - acc;
        out.push(acc);
    }
    out
}

impl<F: Field> BasedComplex<F> {
    /// Validate shapes and `∂_{i-1} ∘ ∂_i = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Matrix<F>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least C_0".into()));
        }
        if boundaries.len() + 1 != dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::InvalidComplex(format!(
                    "boundary {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !(&boundaries[i - 1] * &boundaries[i]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "boundary {} composed with boundary {i} is nonzero",
                    i - 1
                )));
            }
        }
        Ok(BasedComplex {
            dims,
            boundaries,
            homology_bases: None,
        })
    }

    /// Attach homology bases, one `dim C_i × dim H_i` matrix of cycles per
    /// degree, checked to project onto a basis of homology.
    pub fn with_homology_bases(mut self, bases: Vec<Matrix<F>>) -> Result<Self> {
        if bases.len() != self.dims.len() {
            return Err(Error::InvalidComplex(format!(
                "{} homology bases for {} degrees",
                bases.len(),
                self.dims.len()
            )));
        }
        for (i, h) in bases.iter().enumerate() {
            let bad = |reason: String| Error::InvalidHomologyBasis { degree: i, reason };
            if h.rows() != self.dims[i] {
                return Err(bad(format!("{} rows, expected {}", h.rows(), self.dims[i])));
            }
            let expected = self.homology_dim(i);
            if h.cols() != expected {
                return Err(bad(format!("{} vectors, homology has dimension {expected}", h.cols())));
            }
            if i > 0 && !(&self.boundaries[i - 1] * h).is_zero() {
                return Err(bad("a vector is not a cycle".into()));
            }
            let b = self.boundary_basis(i);
            if b.hstack(h)?.rank() != b.cols() + h.cols() {
                return Err(bad("vectors are dependent modulo boundaries".into()));
            }
        }
        self.homology_bases = Some(bases);
        Ok(self)
    }

    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[Matrix<F>] {
        &self.boundaries
    }

    /// `∂_i: C_{i+1} → C_i`.
    pub fn boundary(&self, i: usize) -> &Matrix<F> {
        &self.boundaries[i]
    }

    pub fn homology_bases(&self) -> Option<&[Matrix<F>]> {
        self.homology_bases.as_deref()
    }

    fn rank_of(&self, i: isize) -> usize {
        if i < 0 || i as usize >= self.boundaries.len() {
            0
        } else {
            self.boundaries[i as usize].rank()
        }
    }

    /// `dim H_i = dim ker ∂_{i-1} - rank ∂_i`.
    pub fn homology_dim(&self, i: usize) -> usize {
        self.dims[i] - self.rank_of(i as isize - 1) - self.rank_of(i as isize)
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|i| self.homology_dim(i)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.dims.len()).all(|i| self.homology_dim(i) == 0)
    }

    /// Pivot columns of `∂_i` (empty for `i = m`).
    fn pivots(&self, i: usize) -> Vec<usize> {
        if i < self.boundaries.len() {
            self.boundaries[i].rref().1
        } else {
            Vec::new()
        }
    }

    /// Basis of `B_i = im ∂_i` made of pivot columns of `∂_i`.
    pub fn boundary_basis(&self, i: usize) -> Matrix<F> {
        if i < self.boundaries.len() {
            self.boundaries[i].select_cols(&self.pivots(i))
        } else {
            Matrix::zeros(self.dims[i], 0)
        }
    }

    /// Homology groups with cycle representatives extending a basis of the
    /// boundaries to one of the cycles.
    pub fn homology(&self) -> Vec<HomologyGroup<F>> {
        (0..self.dims.len())
            .map(|i| {
                let cycles = if i == 0 {
                    Matrix::identity(self.dims[0])
                } else {
                    self.boundaries[i - 1].nullspace()
                };
                let b = self.boundary_basis(i);
                let stacked = b.hstack(&cycles).expect("same ambient dimension");
                let extra: Vec<usize> = stacked
                    .rref()
                    .1
                    .into_iter()
                    .filter(|&c| c >= b.cols())
                    .collect();
                let representatives = stacked.select_cols(&extra);
                HomologyGroup {
                    dim: representatives.cols(),
                    representatives,
                }
            })
            .collect()
    }

    /// Supplied homology bases, or computed representatives if none.
    pub fn homology_bases_or_default(&self) -> Vec<Matrix<F>> {
        match &self.homology_bases {
            Some(h) => h.clone(),
            None => self.homology().into_iter().map(|g| g.representatives).collect(),
        }
    }

    /// `τ = ∏ [b_i h_i b'_{i-1} / c_i]^{(-1)^{i+1}}`.
    ///
    /// `b_i` are pivot columns of `∂_i` and `b'_{i-1}` the standard basis
    /// vectors of the corresponding pivot columns of `∂_{i-1}`.
    pub fn torsion(&self) -> Result<TorsionValue<F>> {
        let acyclic = self.is_acyclic();
        let bases = match (&self.homology_bases, acyclic) {
            (Some(h), _) => h.clone(),
            (None, true) => self.dims.iter().map(|&d| Matrix::zeros(d, 0)).collect(),
            (None, false) => return Err(Error::MissingHomologyBases),
        };
        let mut tau = F::one();
        let mut lifted: Vec<usize> = Vec::new();
        for i in 0..self.dims.len() {
            let b = self.boundary_basis(i);
            let mut m = b.hstack(&bases[i])?;
            let lifts = Matrix::from_fn(self.dims[i], lifted.len(), |r, c| {
                if r == lifted[c] {
                    F::one()
                } else {
                    F::zero()
                }
            });
            m = m.hstack(&lifts)?;
            if !m.is_square() {
                return Err(Error::Internal(format!(
                    "degree {i}: {} vectors in a space of dimension {}",
                    m.cols(),
                    m.rows()
                )));
            }
            let det = m.det()?;
            if det.is_zero() {
                return Err(Error::Internal(format!("degree {i}: b h b' is not a basis")));
            }
            tau = tau * alternate(det, i as i64 + 1)?;
            lifted = self.pivots(i);
        }
        Ok(TorsionValue {
            value: tau,
            acyclic,
        })
    }

    /// Torsion with the convention `τ = 0` for non-acyclic complexes.
    pub fn invariant_torsion(&self) -> Result<TorsionValue<F>> {
        if self.is_acyclic() {
            self.torsion()
        } else {
            Ok(TorsionValue {
                value: F::zero(),
                acyclic: false,
            })
        }
    }

    pub fn sign_data(&self) -> SignData {
        let m = self.length();
        let alpha = alternating_sums(&self.dims);
        let beta = alternating_sums(&self.homology_dims());
        let eta = alpha.iter().zip(&beta).map(|(a, b)| a * b).sum();
        let prev = |v: &[i64], i: usize| if i == 0 { 0 } else { v[i - 1] };
        let mut r = 0i64;
        for i in 0..=m {
            r += alpha[i] * prev(&alpha, i) + beta[i] * prev(&beta, i);
        }
        for i in 0..=m / 2 {
            r += alpha[2 * i] + beta[2 * i];
        }
        SignData {
            alpha,
            beta,
            eta,
            r,
        }
    }

    /// `τ̌ = (-1)^η τ`.
    pub fn sign_refined_torsion(&self) -> Result<TorsionValue<F>> {
        let t = self.torsion()?;
        Ok(TorsionValue {
            value: sign::<F>(self.sign_data().eta) * t.value,
            acyclic: t.acyclic,
        })
    }

    /// Change the basis of `C_i` to the columns of `p` (old coordinates).
    /// Torsion changes by `det(p)^{(-1)^i}`.
    pub fn base_change(&self, i: usize, p: &Matrix<F>) -> Result<Self> {
        if i >= self.dims.len() || p.shape() != (self.dims[i], self.dims[i]) {
            return Err(Error::Shape(format!("base change in degree {i}")));
        }
        let pinv = p.inverse().ok_or(Error::Singular)?;
        let mut out = self.clone();
        if i < self.boundaries.len() {
            out.boundaries[i] = &pinv * &self.boundaries[i];
        }
        if i > 0 {
            out.boundaries[i - 1] = &self.boundaries[i - 1] * p;
        }
        if let Some(h) = &mut out.homology_bases {
            h[i] = &pinv * &h[i];
        }
        Ok(out)
    }

    /// The dual complex: `C^⋆_i` is the conjugate dual of `C_{m-i}` with
    /// boundary `(-1)^{m-i} conj(∂_{m-i-1})^T`, dual bases, and the homology
    /// basis dual to the given one.
    pub fn dual(&self) -> Result<Self> {
        let m = self.length();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let boundaries: Vec<Matrix<F>> = (0..m)
            .map(|i| {
                self.boundaries[m - i - 1]
                    .conj_transpose()
                    .scale(&sign::<F>((m - i) as i64))
            })
            .collect();
        let mut dual = BasedComplex::new(dims, boundaries)?;
        if let Some(h) = &self.homology_bases {
            let mut hs = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let j = m - i;
                let hj = &h[j];
                let bj = self.boundary_basis(j);
                // Functionals g with g(h_k) = δ_k and g(B_j) = 0, in the
                // conjugate dual coordinates.
                let system = hj.conj_transpose().vstack(&bj.conj_transpose())?;
                let rhs = Matrix::identity(hj.cols()).vstack(&Matrix::zeros(bj.cols(), hj.cols()))?;
                let g = system
                    .solve(&rhs)
                    .ok_or_else(|| Error::Internal(format!("no dual homology basis in degree {j}")))?;
                hs.push(g);
            }
            dual = dual.with_homology_bases(hs)?;
        }
        Ok(dual)
    }

    /// `τ(C) = (-1)^{r(C)} · conj(τ(C^⋆))^{(-1)^{m+1}}`.
    pub fn check_duality_lemma(&self) -> Result<bool> {
        let m = self.length() as i64;
        let dual = self.dual()?;
        let lhs = self.torsion()?.value;
        let r = self.sign_data().r;
        let rhs = sign::<F>(r) * alternate(dual.torsion()?.value.conj(), m + 1)?;
        Ok(lhs == rhs)
    }
}

/// `det(p)^{(-1)^i}`, the factor by which [`BasedComplex::base_change`]
/// multiplies torsion.
pub fn base_change_factor<F: Field>(i: usize, p: &Matrix<F>) -> Result<F> {
    let d = p.det()?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    Ok(pow(&d, if i.is_multiple_of(2) { 1 } else { -1 }))
}

/// Cellular complex of the torus twisted by `H_1(T²) → ⟨t1, t2⟩`, over
/// `ℚ(t1, t2)`. Its torsion is `(t2 - 1)/(1 - t2) = -1`.
pub fn torus_fixture() -> BasedComplex<RationalFunction<Rational>> {
    let r = |s: &str| RationalFunction::parse(s, 2).expect("fixture entry");
    let d1 = Matrix::from_rows(vec![vec![r("t2 - 1")], vec![r("1 - t1")]]).expect("2x1");
    let d0 = Matrix::from_rows(vec![vec![r("1 - t1"), r("1 - t2")]]).expect("1x2");
    BasedComplex::new(vec![1, 2, 1], vec![d0, d1]).expect("d0 d1 = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRational, Rational, RationalFunction, Ring, ScalarField, F101};

    type R2 = RationalFunction<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn torus_fixture_is_minus_one() {
        let c = torus_fixture();
        assert!(c.is_acyclic());
        assert_eq!(c.torsion().unwrap().value, -R2::one());
        assert!(c.check_duality_lemma().unwrap());
    }

    #[test]
    fn one_step_complex_gives_inverse() {
        // 0 → F →(a)→ F → 0 has torsion a^{-1}.
        let a = q(5);
        let c = BasedComplex::new(vec![1, 1], vec![Matrix::scalar(1, a.clone())]).unwrap();
        assert_eq!(c.torsion().unwrap().value, a.inv().unwrap());
        let id = BasedComplex::new(vec![3, 3], vec![Matrix::<Rational>::identity(3)]).unwrap();
        assert_eq!(id.torsion().unwrap().value, Rational::one());
    }

    #[test]
    fn homology_examples() {
        let c = BasedComplex::new(vec![1, 1], vec![Matrix::<Rational>::identity(1)]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);
        let z = BasedComplex::new(vec![2, 3], vec![Matrix::<Rational>::zeros(2, 3)]).unwrap();
        assert_eq!(z.homology_dims(), vec![2, 3]);
        assert_eq!(z.torsion(), Err(Error::MissingHomologyBases));
        assert_eq!(z.invariant_torsion().unwrap().value, Rational::zero());
    }

    #[test]
    fn sign_data_of_zero_complex() {
        // dims (1,1), zero boundary, h = c.
        let c = BasedComplex::new(vec![1, 1], vec![Matrix::<Rational>::zeros(1, 1)])
            .unwrap()
            .with_homology_bases(vec![Matrix::identity(1), Matrix::identity(1)])
            .unwrap();
        let s = c.sign_data();
        assert_eq!(s.alpha, vec![1, 0]);
        assert_eq!(s.beta, vec![1, 0]);
        assert_eq!(s.eta, 1);
        assert_eq!(c.torsion().unwrap().value, q(1));
        assert_eq!(c.sign_refined_torsion().unwrap().value, q(-1));
    }

    #[test]
    fn rejects_bad_input() {
        let d = Matrix::<Rational>::identity(1);
        assert!(matches!(
            BasedComplex::new(vec![1, 2], vec![d.clone()]),
            Err(Error::InvalidComplex(_))
        ));
        assert!(matches!(
            BasedComplex::new(vec![1, 1, 1], vec![d.clone(), d.clone()]),
            Err(Error::InvalidComplex(_))
        ));
        let z = BasedComplex::new(vec![1, 1], vec![Matrix::<Rational>::zeros(1, 1)]).unwrap();
        assert!(matches!(
            z.clone().with_homology_bases(vec![Matrix::zeros(1, 1), Matrix::identity(1)]),
            Err(Error::InvalidHomologyBasis { degree: 0, .. })
        ));
        let c = BasedComplex::new(vec![1, 1], vec![d]).unwrap();
        assert!(matches!(c.base_change(0, &Matrix::zeros(1, 1)), Err(Error::Singular)));
    }

    #[test]
    fn swap_and_scale_in_each_degree() {
        let r = |s: &str| R2::parse(s, 2).unwrap();
        let c = torus_fixture();
        let tau = c.torsion().unwrap().value;
        let mut swap = Matrix::<R2>::zeros(2, 2);
        swap[(0, 1)] = R2::one();
        swap[(1, 0)] = R2::one();
        assert_eq!(c.base_change(1, &swap).unwrap().torsion().unwrap().value, -tau.clone());
        let f = r("t1^2 + 3");
        for i in 0..3 {
            let mut p = Matrix::<R2>::identity(c.dims()[i]);
            p[(0, 0)] = f.clone();
            let expected = if i % 2 == 0 {
                f.clone() * tau.clone()
            } else {
                tau.clone() / f.clone()
            };
            assert_eq!(c.base_change(i, &p).unwrap().torsion().unwrap().value, expected);
        }
    }

    #[test]
    fn dual_of_one_step_complex() {
        let a = GaussRational::parse("2+i").unwrap();
        let c = BasedComplex::new(vec![1, 1], vec![Matrix::scalar(1, a.clone())]).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.boundary(0)[(0, 0)], -a.conj());
        let dd = d.dual().unwrap();
        // Double dual: boundaries pick up (-1)^{m+1}, which is +1 for m = 1.
        assert_eq!(dd.boundary(0)[(0, 0)], a);
        assert!(c.check_duality_lemma().unwrap());
    }

    #[test]
    fn dual_reverses_dims_and_keeps_r() {
        let d0 = Matrix::<F101>::from_rows(vec![vec![F101::new(1), F101::new(2), F101::new(0)]]).unwrap();
        let c = BasedComplex::new(vec![1, 3], vec![d0])
            .unwrap()
            .with_homology_bases(vec![
                Matrix::zeros(1, 0),
                Matrix::from_rows(vec![
                    vec![F101::new(2), F101::new(0)],
                    vec![F101::new(-1), F101::new(0)],
                    vec![F101::new(0), F101::new(1)],
                ])
                .unwrap(),
            ])
            .unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.dims(), &[3, 1]);
        assert_eq!(c.sign_data().r, 3);
        assert_eq!(d.sign_data().r, -5);
        assert!(c.check_duality_lemma().unwrap());
    }
}
