use super::Representation;
use crate::algebra::{Matrix, ScalarField};
use crate::fox::{integer_smith, AbelianizationMap, Letter, Word};

/// Incremental row echelon basis of a subspace of `K^n`.
struct Echelon<K: ScalarField> {
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: ScalarField> Echelon<K> {
    /// Reduces `v` against the basis; keeps it if independent.
    fn insert(&mut self, mut v: Vec<K>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        let v: Vec<K> = v.into_iter().map(|x| x * inv.clone()).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Dimension of the unital algebra generated by the matrices. By Burnside's
/// theorem it equals `d²` exactly when the matrices act absolutely
/// irreducibly on `K^d`.
pub fn enveloping_dimension<K: ScalarField>(gens: &[Matrix<K>]) -> usize {
    let Some(d) = gens.first().map(Matrix::rows) else {
        return 1;
    };
    let mut basis = Echelon { rows: Vec::new() };
    let id: Matrix<K> = Matrix::identity(d);
    basis.insert(id.entries().to_vec());
    let mut queue = vec![id];
    // Words are added by right multiplication until the span stabilizes.
    while let Some(m) = queue.pop() {
        for g in gens {
            let w = &m * g;
            if basis.insert(w.entries().to_vec()) {
                queue.push(w);
            }
        }
    }
    basis.rows.len()
}

/// Restriction of `α` to `ker φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelTest {
    /// A word in `ker φ` with non-identity image.
    Nontrivial(Word),
    /// `α` factors through `φ`.
    Trivial,
}

impl KernelTest {
    pub fn is_nontrivial(&self) -> bool {
        matches!(self, KernelTest::Nontrivial(_))
    }
}

fn power_word(exps: &[i64]) -> Word {
    Word::new(exps.iter().enumerate().flat_map(|(g, &e)| {
        std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
    }))
}

/// `ker φ` is the normal closure in `π` of the commutators `[x_i, x_j]` and
/// of the words `x^v` for `v` in a basis of the integer kernel of the matrix
/// of generator images. `α` kills the normal closure iff it kills these
/// finitely many words, so the test is exact.
pub(super) fn kernel_test<K: ScalarField>(
    rep: &Representation<K>,
    phi: &AbelianizationMap,
) -> KernelTest {
    let n = rep.generator_count();
    let holds = |w: &Word| rep.eval(w).expect("indices in range").is_identity();
    for i in 0..n {
        for j in i + 1..n {
            let w = Word::new([
                Letter::new(i, false),
                Letter::new(j, false),
                Letter::new(i, true),
                Letter::new(j, true),
            ]);
            if !holds(&w) {
                return KernelTest::Nontrivial(w);
            }
        }
    }
    let sm = integer_smith(phi.images(), phi.rank());
    for row in &sm.u[sm.rank..] {
        let w = power_word(row);
        if !holds(&w) {
            return KernelTest::Nontrivial(w);
        }
    }
    KernelTest::Trivial
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Ring, F7};
    use crate::fox::{abelianization, knot_table};

    type Q = Rational;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix<Q> {
        Matrix::from_rows(vec![vec![Q::from_int(a), Q::from_int(b)], vec![Q::from_int(c), Q::from_int(d)]])
            .unwrap()
    }

    #[test]
    fn burnside_examples() {
        assert_eq!(enveloping_dimension(&[m2(1, 1, 0, 1), m2(2, 3, 0, 1)]), 3);
        assert_eq!(enveloping_dimension(&[m2(1, 1, 0, 1), m2(1, 0, -1, 1)]), 4);
        assert_eq!(enveloping_dimension(&[m2(1, 0, 0, 2)]), 2);
        // Rotation by 90°: irreducible over ℚ but not absolutely.
        assert_eq!(enveloping_dimension(&[m2(0, -1, 1, 0)]), 2);
        let f7 = |a: i64| F7::new(a);
        let x = Matrix::from_rows(vec![vec![f7(1), f7(1)], vec![f7(0), f7(1)]]).unwrap();
        assert_eq!(enveloping_dimension(&[x.clone(), x.transpose()]), 4);
    }

    #[test]
    fn kernel_examples() {
        let p = knot_table("trefoil").unwrap();
        let phi = abelianization(&p).unwrap();
        let rep = Representation::for_presentation(&p, vec![m2(1, 1, 0, 1), m2(1, 0, -1, 1)]).unwrap();
        let KernelTest::Nontrivial(w) = rep.kernel_test(&phi) else {
            panic!("trefoil rep is nontrivial on the kernel");
        };
        assert!(!rep.eval(&w).unwrap().is_identity());
        assert!(phi.eval(&w).iter().all(|&e| e == 0));
        assert_eq!(Representation::<Q>::trivial(2, 2).kernel_test(&phi), KernelTest::Trivial);
        // Abelian image through φ: both generators go to the same matrix.
        let a = m2(2, 1, 0, 1);
        let abelian = Representation::for_presentation(&p, vec![a.clone(), a]).unwrap();
        assert_eq!(abelian.kernel_test(&phi), KernelTest::Trivial);
    }
}
