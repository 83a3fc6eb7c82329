use proptest::prelude::*;

use twisted_torsion::algebra::{LaurentPoly, Matrix, Rational, RationalFunction, Ring, F7};
use twisted_torsion::fox::{
    abelianization, fox_gradient, fox_jacobian, knot_table, GroupPresentation, Letter, MatrixImages, Word,
};
use twisted_torsion::invariants::{alexander_order, laurent_unit_equiv};
use twisted_torsion::reps::Representation;

fn word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, any::<bool>()), 0..14)
        .prop_map(|l| Word::new(l.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn gl2() -> impl Strategy<Value = Matrix<F7>> {
    prop::collection::vec(0i64..7, 4)
        .prop_map(|v| Matrix::new(2, 2, v.into_iter().map(F7::new).collect()).unwrap())
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
}

fn images(n: usize) -> impl Strategy<Value = MatrixImages<F7>> {
    prop::collection::vec(gl2(), n).prop_map(|m| MatrixImages::from_invertible(m).unwrap())
}

fn sum(ms: impl IntoIterator<Item = Matrix<F7>>) -> Matrix<F7> {
    ms.into_iter().fold(Matrix::zeros(2, 2), |a, m| &a + &m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// `Σ_j ∂w/∂x_j (x_j - 1) = w - 1`.
    #[test]
    fn fundamental_identity(w in word(3), rho in images(3)) {
        let grad = fox_gradient(&w, &rho).unwrap();
        let id = Matrix::identity(2);
        let lhs = sum((0..3).map(|j| &grad[j] * &(rho.image(j) - &id)));
        prop_assert_eq!(lhs, &rho.eval(&w).unwrap() - &id);
    }

    #[test]
    fn product_rule(u in word(3), v in word(3), rho in images(3)) {
        let gu = fox_gradient(&u, &rho).unwrap();
        let gv = fox_gradient(&v, &rho).unwrap();
        let guv = fox_gradient(&u.concat(&v), &rho).unwrap();
        let pu = rho.eval(&u).unwrap();
        for j in 0..3 {
            prop_assert_eq!(&guv[j], &(&gu[j] + &(&pu * &gv[j])));
        }
    }

    #[test]
    fn inverse_rule(w in word(3), rho in images(3)) {
        let g = fox_gradient(&w, &rho).unwrap();
        let gi = fox_gradient(&w.inverse(), &rho).unwrap();
        let winv = rho.eval(&w.inverse()).unwrap();
        for j in 0..3 {
            prop_assert_eq!(&gi[j], &(-&(&winv * &g[j])));
        }
    }

    /// Inserting `x x^{-1}` does not change the derivatives.
    #[test]
    fn free_reduction_invariance(w in word(3), at in 0usize..15, g in 0usize..3, inv in any::<bool>(), rho in images(3)) {
        let mut letters = w.letters().to_vec();
        let at = at.min(letters.len());
        letters.insert(at, Letter::new(g, !inv));
        letters.insert(at, Letter::new(g, inv));
        let padded = Word::new(letters);
        prop_assert_eq!(fox_gradient(&padded, &rho).unwrap(), fox_gradient(&w, &rho).unwrap());
    }
}

struct FoxCase {
    name: String,
    rank: usize,
    relator: String,
    images: Vec<String>,
    derivatives: Vec<String>,
}

fn read_fixture() -> Vec<FoxCase> {
    let text = include_str!("fixtures/fox_abelian.txt");
    let mut cases: Vec<FoxCase> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            cases.push(FoxCase {
                name: name.into(),
                rank: 0,
                relator: String::new(),
                images: vec![],
                derivatives: vec![],
            });
            continue;
        }
        let c = cases.last_mut().expect("section header first");
        let (k, v) = line.split_once(':').expect("key: value");
        let v = v.trim().to_string();
        match k {
            "rank" => c.rank = v.parse().unwrap(),
            "rel" => c.relator = v,
            "da" | "db" => c.derivatives.push(v),
            _ => c.images.push(v),
        }
    }
    cases
}

#[test]
fn abelianized_derivatives_match_hand_computation() {
    type P = LaurentPoly<Rational>;
    let cases = read_fixture();
    assert_eq!(cases.len(), 4);
    for c in cases {
        let p = GroupPresentation::from_words(2, &[&c.relator]).unwrap();
        let img: Vec<Matrix<P>> = c.images.iter().map(|s| Matrix::scalar(1, P::parse(s, c.rank).unwrap())).collect();
        let inv: Vec<Matrix<P>> = img.iter().map(|m| Matrix::scalar(1, m[(0, 0)].involute())).collect();
        let rho = MatrixImages::new(img, inv).unwrap();
        let jac = fox_jacobian(&p, &rho).unwrap();
        for (j, d) in c.derivatives.iter().enumerate() {
            assert_eq!(jac[(0, j)], P::parse(d, c.rank).unwrap(), "{} d/dx{}", c.name, j);
        }
    }
}

/// For a one-relator knot group the Alexander polynomial is any abelianized
/// Fox derivative of the relator.
#[test]
fn hand_derivatives_give_the_table_alexander_polynomials() {
    for c in read_fixture().into_iter().filter(|c| c.name == "trefoil" || c.name == "figure8") {
        let p = knot_table(&c.name).unwrap();
        assert_eq!(p.relator_text(0), c.relator);
        let phi = abelianization(&p).unwrap();
        let delta = alexander_order(&p, &Representation::<Rational>::trivial(2, 1), &phi, 1).unwrap().polynomial;
        for d in &c.derivatives {
            let hand = RationalFunction::parse(d, 1).unwrap();
            assert!(laurent_unit_equiv(&hand, &RationalFunction::from_poly(delta.clone())), "{}: {d} vs {delta}", c.name);
        }
    }
}

/// Classical Alexander polynomials of the remaining table entries, as a
/// check on the tabulated relators.
#[test]
fn table_entries_have_their_alexander_polynomials() {
    use twisted_torsion::invariants::wada_invariant;
    for (name, rank, expected) in [
        ("5_2", 1, "(2*t^2 - 3*t + 2)/(t - 1)"),
        ("hopf", 2, "1"),
        ("whitehead", 2, "t1*t2 - t1 - t2 + 1"),
        ("unknot", 1, "(1)/(t - 1)"),
    ] {
        let p = knot_table(name).unwrap();
        let phi = abelianization(&p).unwrap();
        let rep = Representation::<Rational>::trivial(p.generator_count(), 1);
        let w = wada_invariant(&p, &rep, &phi).unwrap();
        let expected = RationalFunction::parse(expected, rank).unwrap();
        assert!(laurent_unit_equiv(&w.invariant.representative, &expected), "{name}: {}", w.invariant.representative);
    }
}
