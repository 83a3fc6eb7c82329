use num_integer::Integer;
use num_traits::One;

use super::{GroupPresentation, Word};
use crate::algebra::{Matrix, Monomial, Rational, Ring};
use crate::error::{Error, Result};

/// Smith form `U·A·V = diag(divisors)` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSmith {
    /// `min(rows, cols)` nonnegative entries, each dividing the next, zeros last.
    pub divisors: Vec<i64>,
    pub rank: usize,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn row_op(m: &mut [Vec<i64>], target: usize, src: usize, q: i64) {
    for j in 0..m[target].len() {
        m[target][j] -= q * m[src][j];
    }
}

fn col_op(m: &mut [Vec<i64>], target: usize, src: usize, q: i64) {
    for row in m.iter_mut() {
        row[target] -= q * row[src];
    }
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form over ℤ with both transformation matrices.
pub fn integer_smith(a: &[Vec<i64>], cols: usize) -> IntegerSmith {
    let rows = a.len();
    assert!(a.iter().all(|r| r.len() == cols), "ragged integer matrix");
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs())
        else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            for i in t + 1..rows {
                let q = Integer::div_floor(&d[i][t], &d[t][t]);
                row_op(&mut d, i, t, q);
                row_op(&mut u, i, t, q);
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&d[t][j], &d[t][t]);
                col_op(&mut d, j, t, q);
                col_op(&mut v, j, t, q);
            }
            let row_rest = (t + 1..rows).find(|&i| d[i][t] != 0);
            let col_rest = (t + 1..cols).find(|&j| d[t][j] != 0);
            if let Some(i) = row_rest {
                let i = (t + 1..rows)
                    .filter(|&k| d[k][t] != 0)
                    .min_by_key(|&k| d[k][t].abs())
                    .unwrap_or(i);
                d.swap(t, i);
                u.swap(t, i);
                continue;
            }
            if let Some(j) = col_rest {
                let j = (t + 1..cols)
                    .filter(|&k| d[t][k] != 0)
                    .min_by_key(|&k| d[t][k].abs())
                    .unwrap_or(j);
                swap_cols(&mut d, t, j);
                swap_cols(&mut v, t, j);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0));
            match bad {
                Some(i) => {
                    row_op(&mut d, t, i, -1);
                    row_op(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
        t += 1;
    }
    IntegerSmith {
        divisors: (0..rows.min(cols)).map(|i| d[i][i]).collect(),
        rank: t,
        u,
        v,
    }
}

/// A surjection `φ: π → ℤ^rank`, stored as the image of every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    rank: usize,
    images: Vec<Vec<i64>>,
}

impl AbelianizationMap {
    /// Checks that every relator is killed and that the images generate `ℤ^rank`.
    pub fn new(p: &GroupPresentation, images: Vec<Vec<i64>>) -> Result<Self> {
        let rank = images.first().map_or(0, Vec::len);
        if rank == 0 {
            return Err(Error::TrivialFreePart);
        }
        if images.len() != p.generator_count() || images.iter().any(|v| v.len() != rank) {
            return Err(Error::Shape("one image vector per generator".into()));
        }
        let phi = AbelianizationMap { rank, images };
        for (i, r) in p.relators().iter().enumerate() {
            if phi.eval(r).iter().any(|&x| x != 0) {
                return Err(Error::RelatorViolation { index: i, relator: p.relator_text(i) });
            }
        }
        let sm = integer_smith(&phi.images, rank);
        if sm.rank != rank || sm.divisors.iter().any(|&d| d != 1) {
            return Err(Error::Hypothesis("φ is not onto ℤ^rank".into()));
        }
        Ok(phi)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, gen: usize) -> &[i64] {
        &self.images[gen]
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for l in w.letters() {
            for (x, y) in v.iter_mut().zip(&self.images[l.gen]) {
                *x += l.exponent() * y;
            }
        }
        v
    }

    /// `φ(x_gen)` as a monomial `t_1^{e_1}⋯t_r^{e_r}`.
    pub fn monomial(&self, gen: usize) -> Monomial {
        Monomial::new(&self.images[gen].iter().map(|&e| e as i32).collect::<Vec<_>>())
    }

    /// Composition with `ℤ^rank → ℤ`, `e ↦ Σ w_i e_i`; must stay onto.
    pub fn collapse(&self, p: &GroupPresentation, weights: &[i64]) -> Result<Self> {
        if weights.len() != self.rank {
            return Err(Error::Shape(format!("{} weights for rank {}", weights.len(), self.rank)));
        }
        let images = self
            .images
            .iter()
            .map(|v| vec![v.iter().zip(weights).map(|(a, b)| a * b).sum()])
            .collect();
        AbelianizationMap::new(p, images)
    }
}

fn invert_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let q = Matrix::from_fn(n, n, |i, j| Rational::from_int(m[i][j]));
    let inv = q.inverse()?;
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = &inv[(i, j)];
            if !x.denom().is_one() {
                return None;
            }
            out[i][j] = x.numer().try_into().ok()?;
        }
    }
    Some(out)
}

/// Projection of the exponent-sum map onto the free part of `H_1`.
///
/// When the presentation names one meridian per component and their images
/// form a basis, the map is rewritten so that meridian `i` goes to `e_i`.
/// For a single variable the sign is chosen so the first generator maps to a
/// positive integer.
pub fn abelianization(p: &GroupPresentation) -> Result<AbelianizationMap> {
    let n = p.generator_count();
    let exps: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(n)).collect();
    let sm = integer_smith(&exps, n);
    let f = n - sm.rank;
    if f == 0 {
        return Err(Error::TrivialFreePart);
    }
    let mut images: Vec<Vec<i64>> = sm.v.iter().map(|row| row[sm.rank..].to_vec()).collect();
    if let Some(mer) = p.meridians.as_ref().filter(|m| m.len() == f) {
        let m: Vec<Vec<i64>> = mer.iter().map(|&g| images[g].clone()).collect();
        if let Some(minv) = invert_unimodular(&m) {
            images = images
                .iter()
                .map(|row| (0..f).map(|j| (0..f).map(|k| row[k] * minv[k][j]).sum()).collect())
                .collect();
        }
    }
    if f == 1 {
        let lead = p.meridians.as_ref().and_then(|m| m.first().copied()).unwrap_or(0);
        let s = images[lead][0].signum();
        if s < 0 {
            images.iter_mut().for_each(|v| v[0] = -v[0]);
        }
    }
    AbelianizationMap::new(p, images)
}
