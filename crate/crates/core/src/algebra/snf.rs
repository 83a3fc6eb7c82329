use super::field::{Ring, ScalarField};
use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use crate::error::Result;

/// Smith normal form data of a matrix over `K[t^{±1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<K: ScalarField> {
    /// `min(rows, cols)` diagonal entries, unit-normalized, each dividing the
    /// next; nonzero entries come first.
    pub divisors: Vec<LaurentPoly<K>>,
    pub rank: usize,
}

impl<K: ScalarField> SmithForm<K> {
    /// Product of the nonzero divisors.
    pub fn nonzero_product(&self) -> LaurentPoly<K> {
        self.divisors
            .iter()
            .filter(|d| !d.is_zero())
            .fold(LaurentPoly::constant(K::one(), 1), |acc, d| acc * d.clone())
    }
}

fn span_len<K: ScalarField>(p: &LaurentPoly<K>) -> i64 {
    p.degree().expect("univariate nonzero entry")
}

/// Elementary divisors of a matrix with univariate Laurent entries.
pub fn snf_univariate<K: ScalarField>(m: &Matrix<LaurentPoly<K>>) -> Result<SmithForm<K>> {
    for x in m.entries() {
        if !x.is_zero() {
            x.span()?;
        }
    }
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let n = rows.min(cols);
    let mut rank = 0;
    for t in 0..n {
        // Pick the entry of least degree as pivot and reduce until the pivot
        // row and column vanish and the pivot divides the remaining block.
        loop {
            let mut best: Option<(usize, usize, i64)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero() {
                        let d = span_len(&a[(i, j)]);
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return Ok(finish(a, n, rank));
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let piv = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, t)].div_rem(&piv)?;
                for j in t..cols {
                    let v = a[(t, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - q.clone() * v;
                }
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(t, j)].div_rem(&piv)?;
                for i in t..rows {
                    let v = a[(i, t)].clone();
                    a[(i, j)] = a[(i, j)].clone() - q.clone() * v;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| {
                    let (_, r) = a[(i, j)].div_rem(&piv).expect("univariate");
                    !r.is_zero()
                })
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[(i, j)].clone();
                        a[(t, j)] = a[(t, j)].clone() + v;
                    }
                }
                None => break,
            }
        }
        rank += 1;
    }
    Ok(finish(a, n, rank))
}

fn finish<K: ScalarField>(a: Matrix<LaurentPoly<K>>, n: usize, rank: usize) -> SmithForm<K> {
    let divisors = (0..n)
        .map(|i| {
            let d = &a[(i, i)];
            if d.is_zero() {
                LaurentPoly::zero_with_rank(1)
            } else {
                d.unit_normalize().expect("nonzero").0
            }
        })
        .collect();
    SmithForm { divisors, rank }
}
