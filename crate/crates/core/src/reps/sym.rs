use std::collections::BTreeMap;

use super::Representation;
use crate::algebra::{Matrix, ScalarField};
use crate::error::{Error, Result};
use crate::fox::MatrixImages;

/// `binomial(n + k - 1, k)`.
pub fn sym_dimension(n: usize, k: usize) -> usize {
    (1..=k).fold(1usize, |acc, i| acc * (n + i - 1) / i)
}

/// Nondecreasing index tuples `e_1 ≤ ... ≤ e_k` in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Action of `A` on `Sym^k(K^n)` in the monomial basis `v_{e_1}⋯v_{e_k}`.
pub fn sym_matrix<K: ScalarField>(a: &Matrix<K>, k: usize) -> Matrix<K> {
    let n = a.rows();
    let basis = multisets(n, k);
    let index: BTreeMap<&[usize], usize> =
        basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (col, mono) in basis.iter().enumerate() {
        // Expand ∏ A·v_{e} as a polynomial in v_1, ..., v_n.
        let mut poly: BTreeMap<Vec<usize>, K> = BTreeMap::from([(Vec::new(), K::one())]);
        for &e in mono {
            let mut next: BTreeMap<Vec<usize>, K> = BTreeMap::new();
            for (m, c) in &poly {
                for j in 0..n {
                    let x = &a[(j, e)];
                    if x.is_zero() {
                        continue;
                    }
                    let mut m2 = m.clone();
                    let pos = m2.partition_point(|&y| y <= j);
                    m2.insert(pos, j);
                    let entry = next.entry(m2).or_insert_with(K::zero);
                    *entry = entry.clone() + c.clone() * x.clone();
                }
            }
            poly = next;
        }
        for (m, c) in poly {
            out[(index[m.as_slice()], col)] = c;
        }
    }
    out
}

/// The `k`-th symmetric power representation.
pub fn sym_power<K: ScalarField>(rep: &Representation<K>, k: usize) -> Result<Representation<K>> {
    if k == 0 {
        return Err(Error::Hypothesis("symmetric power needs k ≥ 1".into()));
    }
    let n = rep.generator_count();
    let images = (0..n).map(|i| sym_matrix(rep.image(i), k)).collect();
    let inverses = (0..n).map(|i| sym_matrix(rep.matrix_images().inverse(i), k)).collect();
    Ok(Representation { images: MatrixImages::new(images, inverses)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Ring};

    type Q = Rational;

    #[test]
    fn dimensions() {
        for k in 1..=5 {
            assert_eq!(sym_dimension(2, k), k + 1);
            assert_eq!(multisets(2, k).len(), k + 1);
        }
        assert_eq!(sym_dimension(3, 2), 6);
        assert_eq!(multisets(3, 3).len(), 10);
    }

    #[test]
    fn diagonal_action() {
        let l = Q::from_int(3);
        let a = Matrix::from_rows(vec![vec![l.clone(), Q::zero()], vec![Q::zero(), Q::new(1, 3)]]).unwrap();
        let s = sym_matrix(&a, 2);
        let expect = Matrix::from_rows(vec![
            vec![Q::from_int(9), Q::zero(), Q::zero()],
            vec![Q::zero(), Q::one(), Q::zero()],
            vec![Q::zero(), Q::zero(), Q::new(1, 9)],
        ])
        .unwrap();
        assert_eq!(s, expect);
        assert_eq!(sym_matrix(&a, 1), a);
    }
}
