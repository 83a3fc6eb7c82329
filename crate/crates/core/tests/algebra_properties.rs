use proptest::prelude::*;

use twisted_torsion::algebra::{
    bareiss_det, snf_univariate, Field, GaussRational, LaurentPoly, Matrix, Monomial, Rational, RationalFunction,
    Ring, F7,
};

type P7 = LaurentPoly<F7>;

fn poly7() -> impl Strategy<Value = P7> {
    (-3i32..3, prop::collection::vec(0i64..7, 0..5))
        .prop_map(|(low, c)| P7::from_coeffs(low, &c.into_iter().map(F7::new).collect::<Vec<_>>()))
}

fn poly_q() -> impl Strategy<Value = LaurentPoly<Rational>> {
    (-3i32..3, prop::collection::vec(-5i64..6, 0..5))
        .prop_map(|(low, c)| LaurentPoly::from_coeffs(low, &c.into_iter().map(Rational::from_int).collect::<Vec<_>>()))
}

fn poly_qi() -> impl Strategy<Value = LaurentPoly<GaussRational>> {
    (-2i32..2, prop::collection::vec((-3i64..4, -3i64..4), 0..4)).prop_map(|(low, c)| {
        let c: Vec<GaussRational> =
            c.into_iter().map(|(a, b)| GaussRational::new(Rational::from_int(a), Rational::from_int(b))).collect();
        LaurentPoly::from_coeffs(low, &c)
    })
}

fn matrix7(n: usize) -> impl Strategy<Value = Matrix<F7>> {
    prop::collection::vec(0i64..7, n * n).prop_map(move |v| Matrix::new(n, n, v.into_iter().map(F7::new).collect()).unwrap())
}

fn poly_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<P7>> {
    prop::collection::vec(poly7(), rows * cols).prop_map(move |v| Matrix::new(rows, cols, v).unwrap())
}

/// A unimodular matrix over `F_7[t^{±1}]`: a product of elementary row
/// operations with polynomial multipliers and a diagonal of units.
fn unimodular(n: usize) -> impl Strategy<Value = Matrix<P7>> {
    (
        prop::collection::vec((0..n, 0..n, poly7()), 0..4),
        prop::collection::vec((1i64..7, -2i32..3), n),
    )
        .prop_map(move |(ops, diag)| {
            let mut u = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    P7::monomial(F7::new(diag[i].0), &[diag[i].1])
                } else {
                    P7::zero()
                }
            });
            for (i, j, q) in ops {
                if i == j {
                    continue;
                }
                let mut e = Matrix::<P7>::identity(n);
                e[(i, j)] = q;
                u = &e * &u;
            }
            u
        })
}

fn gcd_all(ps: impl IntoIterator<Item = P7>) -> P7 {
    ps.into_iter().fold(P7::zero(), |acc, p| {
        if acc.is_zero() {
            if p.is_zero() {
                p
            } else {
                p.unit_normalize().unwrap().0
            }
        } else if p.is_zero() {
            acc
        } else {
            acc.gcd(&p).unwrap()
        }
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// gcd of the `k×k` minors, computed by cofactor-free Bareiss determinants.
fn minor_gcd(m: &Matrix<P7>, k: usize) -> P7 {
    let mut minors = Vec::new();
    for r in subsets(m.rows(), k) {
        for c in subsets(m.cols(), k) {
            minors.push(bareiss_det(&m.select_rows(&r).select_cols(&c)));
        }
    }
    gcd_all(minors)
}

fn normalized(p: &P7) -> P7 {
    if p.is_zero() {
        p.clone()
    } else {
        p.unit_normalize().unwrap().0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_ring_axioms(a in poly7(), b in poly7(), c in poly7()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * P7::one(), a);
    }

    #[test]
    fn rational_coefficients_ring_axioms(a in poly_q(), b in poly_q(), c in poly_q()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
    }

    #[test]
    fn involution_is_an_anti_automorphism_of_order_two(a in poly_qi(), b in poly_qi()) {
        prop_assert_eq!((a.clone() * b.clone()).involute(), a.involute() * b.involute());
        prop_assert_eq!((a.clone() + b.clone()).involute(), a.involute() + b.involute());
        prop_assert_eq!(a.involute().involute(), a.clone());
        // The involution conjugates coefficients and inverts t.
        for (m, c) in a.terms() {
            prop_assert_eq!(a.involute().coeff(&m.inv()), c.conj());
        }
    }

    #[test]
    fn degree_is_additive(a in poly_q(), b in poly_q()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((a.clone() * b.clone()).degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(f.degree().unwrap(), a.degree().unwrap() - b.degree().unwrap());
    }

    #[test]
    fn division_with_remainder(a in poly7(), b in poly7()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q * b.clone() + r.clone(), a);
        prop_assert!(r.is_zero() || r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn gcd_divides_both(a in poly7(), b in poly7()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.exact_quotient(&g).is_some());
        prop_assert!(b.exact_quotient(&g).is_some());
    }

    #[test]
    fn rational_functions_form_a_field(a in poly_q(), b in poly_q()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let g = RationalFunction::new(b, a).unwrap();
        prop_assert!((f.clone() * g.clone()).is_one());
        prop_assert_eq!(f.inv().unwrap(), g);
    }

    #[test]
    fn det_is_multiplicative_over_f7(a in matrix7(3), b in matrix7(3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn det_is_multiplicative_over_laurent(a in poly_matrix(2, 2), b in poly_matrix(2, 2)) {
        prop_assert_eq!(bareiss_det(&(&a * &b)), bareiss_det(&a) * bareiss_det(&b));
    }

    #[test]
    fn smith_form_is_unimodular_invariant(m in poly_matrix(2, 3), u in unimodular(2), v in unimodular(3)) {
        let s = snf_univariate(&m).unwrap();
        let t = snf_univariate(&(&(&u * &m) * &v)).unwrap();
        prop_assert_eq!(s, t);
    }

    #[test]
    fn smith_form_matches_minor_gcds(m in poly_matrix(3, 3)) {
        let s = snf_univariate(&m).unwrap();
        let mut prefix = P7::one();
        for k in 1..=3 {
            prefix = prefix * s.divisors[k - 1].clone();
            prop_assert_eq!(normalized(&prefix), minor_gcd(&m, k), "k = {}", k);
        }
        let rank = (1..=3).filter(|&k| !minor_gcd(&m, k).is_zero()).count();
        prop_assert_eq!(s.rank, rank);
    }
}

#[test]
fn monomial_group_law() {
    let a = Monomial::new(&[2, -1]);
    let b = Monomial::new(&[-3, 4]);
    assert_eq!(a.mul(&b).div(&b), a);
    assert!(a.mul(&a.inv()).is_one());
    assert_eq!(a.pow(3), a.mul(&a).mul(&a));
}
