use super::{GroupPresentation, Word};
use crate::algebra::{Field, Matrix, Ring};
use crate::error::{Error, Result};
use crate::torsion::BasedComplex;

/// Images of the generators under a homomorphism into `GL(d, R)`, together
/// with their inverses.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixImages<R: Ring> {
    images: Vec<Matrix<R>>,
    inverses: Vec<Matrix<R>>,
}

impl<R: Ring> MatrixImages<R> {
    /// Checks that the matrices are square of a common size and that each
    /// `inverses[i]` is a two-sided inverse of `images[i]`.
    pub fn new(images: Vec<Matrix<R>>, inverses: Vec<Matrix<R>>) -> Result<Self> {
        if images.len() != inverses.len() {
            return Err(Error::Shape("one inverse per generator".into()));
        }
        let d = images.first().map_or(0, Matrix::rows);
        for (a, b) in images.iter().zip(&inverses) {
            if a.shape() != (d, d) || b.shape() != (d, d) {
                return Err(Error::Shape(format!("generator images must be {d}x{d}")));
            }
            if !(a * b).is_identity() || !(b * a).is_identity() {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixImages { images, inverses })
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, Matrix::rows)
    }

    pub fn image(&self, i: usize) -> &Matrix<R> {
        &self.images[i]
    }

    pub fn inverse(&self, i: usize) -> &Matrix<R> {
        &self.inverses[i]
    }

    pub fn images(&self) -> &[Matrix<R>] {
        &self.images
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MatrixImages<S> {
        MatrixImages {
            images: self.images.iter().map(|m| m.map(&f)).collect(),
            inverses: self.inverses.iter().map(|m| m.map(&f)).collect(),
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.images.len() => Err(Error::GeneratorOutOfRange {
                index: g,
                count: self.images.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, w: &Word) -> Result<Matrix<R>> {
        self.check_word(w)?;
        let mut m = Matrix::identity(self.dim());
        for l in w.letters() {
            let x = if l.inverse { &self.inverses[l.gen] } else { &self.images[l.gen] };
            m = &m * x;
        }
        Ok(m)
    }

    /// Fails with the first relator that does not evaluate to the identity.
    pub fn check_relators(&self, p: &GroupPresentation) -> Result<()> {
        if self.images.len() != p.generator_count() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                self.images.len(),
                p.generator_count()
            )));
        }
        for (i, r) in p.relators().iter().enumerate() {
            if !self.eval(r)?.is_identity() {
                return Err(Error::RelatorViolation { index: i, relator: p.relator_text(i) });
            }
        }
        Ok(())
    }
}

impl<F: Field> MatrixImages<F> {
    pub fn from_invertible(images: Vec<Matrix<F>>) -> Result<Self> {
        let inverses = images
            .iter()
            .map(|m| {
                if !m.is_square() {
                    return Err(Error::Shape("generator images must be square".into()));
                }
                m.inverse().ok_or(Error::Singular)
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixImages::new(images, inverses)
    }
}

/// All Fox derivatives `ρ(∂w/∂x_j)`, one per generator, in a single pass.
pub fn fox_gradient<R: Ring>(w: &Word, rho: &MatrixImages<R>) -> Result<Vec<Matrix<R>>> {
    rho.check_word(w)?;
    let d = rho.dim();
    let mut grad = vec![Matrix::zeros(d, d); rho.generator_count()];
    let mut prefix = Matrix::identity(d);
    for l in w.letters() {
        if l.inverse {
            prefix = &prefix * &rho.inverses[l.gen];
            grad[l.gen] = &grad[l.gen] - &prefix;
        } else {
            grad[l.gen] = &grad[l.gen] + &prefix;
            prefix = &prefix * &rho.images[l.gen];
        }
    }
    Ok(grad)
}

/// `ρ(∂w/∂x_j)`.
pub fn fox_derivative_eval<R: Ring>(w: &Word, j: usize, rho: &MatrixImages<R>) -> Result<Matrix<R>> {
    if j >= rho.generator_count() {
        return Err(Error::GeneratorOutOfRange { index: j, count: rho.generator_count() });
    }
    Ok(fox_gradient(w, rho)?.swap_remove(j))
}

/// Block matrix with `(i, j)` block `ρ(∂r_i/∂x_j)`: one block row per
/// relator, one block column per generator.
pub fn fox_jacobian<R: Ring>(p: &GroupPresentation, rho: &MatrixImages<R>) -> Result<Matrix<R>> {
    let d = rho.dim();
    let n = p.generator_count();
    let mut jac = Matrix::zeros(p.relators().len() * d, n * d);
    for (i, r) in p.relators().iter().enumerate() {
        for (j, block) in fox_gradient(r, rho)?.iter().enumerate() {
            jac.set_block(i * d, j * d, block);
        }
    }
    Ok(jac)
}

/// Twisted chain complex `C_2 → C_1 → C_0` of the presentation 2-complex.
///
/// Chains are row vectors acted on from the right, so in the column
/// convention of [`BasedComplex`] the boundary maps are `∂_0 = [(ρ(x_j) - I)^T]_j`
/// and `∂_1` is the transposed Fox Jacobian. Bases run generator-major
/// (resp. relator-major), then coordinate.
pub fn presentation_complex<F: Field>(
    p: &GroupPresentation,
    rho: &MatrixImages<F>,
) -> Result<BasedComplex<F>> {
    rho.check_relators(p)?;
    let d = rho.dim();
    let n = p.generator_count();
    let k = p.relators().len();
    let mut d0 = Matrix::zeros(d, n * d);
    for j in 0..n {
        let block = (&rho.images[j] - &Matrix::identity(d)).transpose();
        d0.set_block(0, j * d, &block);
    }
    let d1 = fox_jacobian(p, rho)?.transpose();
    BasedComplex::new(vec![d, n * d, k * d], vec![d0, d1])
}
