use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_torsion::algebra::{Field, Matrix, Rational, Ring, ScalarField, F101, F7};
use twisted_torsion::torsion::{
    random_complex, random_invertible, random_ses, ses_torsion_check, BasedComplex,
};

/// Torsion from the defining product with randomly chosen bases of the
/// boundaries and random lifts, instead of pivot columns.
fn torsion_random_choices<F: ScalarField>(c: &BasedComplex<F>, rng: &mut ChaCha8Rng) -> F {
    let m = c.length();
    let h = c.homology_bases_or_default();
    let mut b = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..m {
        let d = c.boundary(i);
        let r = d.rank();
        // Random combinations of the columns of ∂_i, kept if they span im ∂_i.
        let lift = loop {
            let x = Matrix::from_fn(d.cols(), r, |_, _| F::random(rng));
            if (d * &x).rank() == r {
                break x;
            }
        };
        // Perturb the lift by a random cycle.
        let z = d.nullspace();
        let noise = Matrix::from_fn(z.cols(), r, |_, _| F::random(rng));
        let lift = &lift + &(&z * &noise);
        b.push(d * &lift);
        lifts.push(lift);
    }
    b.push(Matrix::zeros(c.dims()[m], 0));
    let mut tau = F::one();
    for i in 0..=m {
        let mut basis = b[i].hstack(&h[i]).unwrap();
        if i > 0 {
            basis = basis.hstack(&lifts[i - 1]).unwrap();
        }
        let det = basis.det().unwrap();
        tau = if i % 2 == 0 { tau / det } else { tau * det };
    }
    tau
}

#[test]
fn torsion_is_independent_of_choices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..100 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, k % 2 == 0);
        let expected = c.torsion().unwrap().value;
        assert_eq!(torsion_random_choices(&c, &mut rng), expected);
    }
}

#[test]
fn duality_lemma_over_f101_and_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..200 {
        let acyclic = k % 2 == 0;
        let c = random_complex::<F101, _>(&mut rng, 5, 6, acyclic);
        assert!(c.check_duality_lemma().unwrap(), "F101 #{k}: {c:?}");
    }
    for k in 0..60 {
        let c = random_complex::<Rational, _>(&mut rng, 4, 5, k % 2 == 0);
        assert!(c.check_duality_lemma().unwrap(), "Q #{k}: {c:?}");
    }
}

#[test]
fn double_dual_scales_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let c = random_complex::<F101, _>(&mut rng, 5, 5, false);
        let dd = c.dual().unwrap().dual().unwrap();
        let m = c.length();
        let s = if m % 2 == 1 { F101::one() } else { -F101::one() };
        for i in 0..m {
            assert_eq!(*dd.boundary(i), c.boundary(i).scale(&s));
        }
        // Same homology classes: the difference is a boundary.
        let (h, hh) = (c.homology_bases().unwrap(), dd.homology_bases().unwrap());
        for i in 0..=m {
            let diff = &h[i] - &hh[i];
            let b = c.boundary_basis(i);
            assert_eq!(b.hstack(&diff).unwrap().rank(), b.cols());
        }
    }
}

#[test]
fn r_agrees_with_dual_modulo_two_for_odd_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut odd = 0;
    while odd < 200 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, odd % 2 == 0);
        if c.length() % 2 == 0 {
            continue;
        }
        odd += 1;
        let diff = c.sign_data().r - c.dual().unwrap().sign_data().r;
        assert_eq!(diff.rem_euclid(2), 0, "{c:?}");
    }
}

#[test]
fn r_can_differ_from_dual_for_even_length() {
    // 0 → 0 → F →(a)→ F: r(C) = 1 while r(C^⋆) = 0, yet the torsion
    // identity holds with (-1)^{r(C)}.
    let c = BasedComplex::new(
        vec![1, 1, 0],
        vec![Matrix::scalar(1, F101::new(3)), Matrix::zeros(1, 0)],
    )
    .unwrap();
    assert_eq!(c.sign_data().r, 1);
    assert_eq!(c.dual().unwrap().sign_data().r, 0);
    assert!(c.check_duality_lemma().unwrap());
}

#[test]
fn ses_multiplicativity_over_f7() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..100 {
        let s = random_ses::<F7, _>(&mut rng, 4, 6, k % 3 == 0).unwrap();
        assert!(
            ses_torsion_check(&s.sub, &s.total, &s.quotient).unwrap(),
            "#{k}: {s:?}"
        );
    }
}

#[test]
fn base_change_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, true);
        let tau = c.torsion().unwrap().value;
        let i = rng.gen_range(0..=c.length());
        let n = c.dims()[i];
        if n == 0 {
            continue;
        }
        let p = random_invertible::<F101, _>(&mut rng, n);
        let d = p.det().unwrap();
        let factor = if i % 2 == 0 { d } else { d.inv().unwrap() };
        assert_eq!(c.base_change(i, &p).unwrap().torsion().unwrap().value, factor * tau);
    }
}

#[test]
fn sign_refinement_is_a_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, false);
        let t = c.torsion().unwrap().value;
        let s = c.sign_refined_torsion().unwrap().value;
        assert!(s == t || s == -t);
        if c.is_acyclic() {
            assert_eq!(s, t);
            assert_eq!(c.sign_data().eta, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_of_chains_and_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex::<F101, _>(&mut rng, 5, 6, false);
        let chi = |v: &[usize]| v.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>();
        prop_assert_eq!(chi(c.dims()), chi(&c.homology_dims()));
        let s = c.sign_data();
        let m = c.length();
        prop_assert_eq!(s.alpha[m].abs(), chi(c.dims()).abs());
        prop_assert_eq!(s.beta[m].abs(), chi(&c.homology_dims()).abs());
    }

    #[test]
    fn swapping_basis_vectors_negates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex::<F101, _>(&mut rng, 5, 6, true);
        let i = rng.gen_range(0..=c.length());
        let n = c.dims()[i];
        prop_assume!(n >= 2);
        let a = rng.gen_range(0..n);
        let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
        let mut p = Matrix::<F101>::identity(n);
        p.swap_cols(a, b);
        let tau = c.torsion().unwrap().value;
        prop_assert_eq!(c.base_change(i, &p).unwrap().torsion().unwrap().value, -tau);
    }
}
