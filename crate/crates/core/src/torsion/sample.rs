use rand::Rng;

use super::BasedComplex;
use crate::algebra::{Matrix, ScalarField};
use crate::error::Result;

/// Uniformly distributed entries until the matrix is invertible.
pub fn random_invertible<F: ScalarField, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<F> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| F::random(rng));
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

fn random_matrix<F: ScalarField, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| F::random(rng))
}

/// Random based complex of length `1..=max_len` with every chain group of
/// dimension at most `max_dim`, equipped with homology bases.
///
/// The complex is built in a split form `C_i = B_i ⊕ H_i ⊕ B'_{i-1}` and then
/// conjugated by random invertible matrices in every degree.
pub fn random_complex<F: ScalarField, R: Rng + ?Sized>(
    rng: &mut R,
    max_len: usize,
    max_dim: usize,
    acyclic: bool,
) -> BasedComplex<F> {
    let m = rng.gen_range(1..=max_len.max(1));
    let mut ranks = vec![0usize; m + 1];
    let mut hdims = vec![0usize; m + 1];
    for i in 0..=m {
        let below = if i == 0 { 0 } else { ranks[i - 1] };
        let room = max_dim.saturating_sub(below);
        if i < m {
            ranks[i] = rng.gen_range(0..=room.min(3));
        }
        if !acyclic {
            hdims[i] = rng.gen_range(0..=(room - ranks[i]).min(2));
        }
    }
    let dims: Vec<usize> = (0..=m)
        .map(|i| ranks[i] + hdims[i] + if i == 0 { 0 } else { ranks[i - 1] })
        .collect();
    let change: Vec<Matrix<F>> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let inverses: Vec<Matrix<F>> = change.iter().map(|a| a.inverse().expect("invertible")).collect();
    let boundaries = (0..m)
        .map(|i| {
            // ∂_i sends the B'-block of C_{i+1} onto the B-block of C_i.
            let mut d = Matrix::zeros(dims[i], dims[i + 1]);
            let offset = ranks[i + 1] + hdims[i + 1];
            for k in 0..ranks[i] {
                d[(k, offset + k)] = F::one();
            }
            &(&change[i] * &d) * &inverses[i + 1]
        })
        .collect();
    let homology = (0..=m)
        .map(|i| {
            let std = Matrix::from_fn(dims[i], hdims[i], |r, c| {
                if r == ranks[i] + c {
                    F::one()
                } else {
                    F::zero()
                }
            });
            // Random triangular mixing keeps a basis of homology and adds
            // boundaries to the representatives.
            let mix = random_invertible::<F, R>(rng, hdims[i]);
            let mut h = &(&change[i] * &std) * &mix;
            if ranks[i] > 0 && hdims[i] > 0 {
                let mut b = Matrix::zeros(dims[i], ranks[i]);
                for k in 0..ranks[i] {
                    b[(k, k)] = F::one();
                }
                let noise = random_matrix::<F, R>(rng, ranks[i], hdims[i]);
                h = &h + &(&(&change[i] * &b) * &noise);
            }
            h
        })
        .collect();
    BasedComplex::new(dims, boundaries)
        .expect("split construction is a complex")
        .with_homology_bases(homology)
        .expect("split construction has homology bases")
}

/// A short exact sequence `0 → C' → C → C'' → 0` with compatible bases.
#[derive(Clone, Debug)]
pub struct RandomSes<F: ScalarField> {
    pub sub: BasedComplex<F>,
    pub total: BasedComplex<F>,
    pub quotient: BasedComplex<F>,
}

/// Random subcomplex of a random complex, with the total complex rewritten
/// in a basis that starts with a basis of the subcomplex.
pub fn random_ses<F: ScalarField, R: Rng + ?Sized>(
    rng: &mut R,
    max_len: usize,
    max_dim: usize,
    acyclic: bool,
) -> Result<RandomSes<F>> {
    let c = random_complex::<F, R>(rng, max_len, max_dim, acyclic);
    let m = c.length();
    // V_i = span(random vectors, ∂_i V_{i+1}), built from the top down.
    let mut sub: Vec<Matrix<F>> = vec![Matrix::zeros(0, 0); m + 1];
    for i in (0..=m).rev() {
        let n = c.dims()[i];
        let k = rng.gen_range(0..=n);
        let mut gens = random_matrix::<F, R>(rng, n, k);
        if i < m {
            gens = gens.hstack(&(c.boundary(i) * &sub[i + 1]))?;
        }
        let pivots = gens.rref().1;
        sub[i] = gens.select_cols(&pivots);
    }
    let mut bases = Vec::with_capacity(m + 1);
    for (i, v) in sub.iter().enumerate() {
        let n = c.dims()[i];
        let ext = v.hstack(&Matrix::identity(n))?;
        let pivots = ext.rref().1;
        bases.push(ext.select_cols(&pivots));
    }
    let mut total = c.clone();
    for (i, p) in bases.iter().enumerate() {
        total = total.base_change(i, p)?;
    }
    let sub_dims: Vec<usize> = sub.iter().map(Matrix::cols).collect();
    let quot_dims: Vec<usize> = (0..=m).map(|i| c.dims()[i] - sub_dims[i]).collect();
    let sub_bd = (0..m)
        .map(|i| total.boundary(i).submatrix(0..sub_dims[i], 0..sub_dims[i + 1]))
        .collect();
    let quot_bd = (0..m)
        .map(|i| {
            total
                .boundary(i)
                .submatrix(sub_dims[i]..c.dims()[i], sub_dims[i + 1]..c.dims()[i + 1])
        })
        .collect();
    let sub_c = BasedComplex::new(sub_dims, sub_bd)?;
    let quot_c = BasedComplex::new(quot_dims, quot_bd)?;
    let sub_h = sub_c.homology_bases_or_default();
    let quot_h = quot_c.homology_bases_or_default();
    Ok(RandomSes {
        sub: sub_c.with_homology_bases(sub_h)?,
        total,
        quotient: quot_c.with_homology_bases(quot_h)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{F101, F7};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 0..50 {
            let c = random_complex::<F101, _>(&mut rng, 5, 6, k % 2 == 0);
            assert!(c.dims().iter().all(|&d| d <= 6));
            assert!(c.length() <= 5);
            if k % 2 == 0 {
                assert!(c.is_acyclic());
            }
            assert!(c.torsion().is_ok());
        }
    }

    #[test]
    fn random_ses_blocks_are_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let s = random_ses::<F7, _>(&mut rng, 4, 5, false).unwrap();
            assert!(super::super::long_exact_sequence(&s.sub, &s.total, &s.quotient).is_ok());
        }
    }
}
