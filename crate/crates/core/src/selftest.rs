//! The acceptance suite: twelve criteria run on fixed seeds and a fixed
//! representation corpus, each reported as pass, fail or skip.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    GaussRational, LaurentPoly, Matrix, Rational, RationalFunction, Ring, ScalarField, F101, F5, F7,
};
use crate::error::{Error, Result};
use crate::fox::{abelianization, fox_gradient, knot_table, GroupPresentation, Letter, MatrixImages, Word};
use crate::invariants::{
    alexander_order, degree_parity_check, laurent_unit_equiv, palindromic_normalize, symmetry_check,
    torsion_via_orders, unit_equiv, wada_invariant, Verdict,
};
use crate::reps::{enumerate_sl2_reps, sym_dimension, sym_power, Representation};
use crate::torsion::{random_complex, random_invertible, random_ses, ses_torsion_check, torus_fixture};

pub const TREFOIL_SL2Q: &str = include_str!("../data/trefoil_sl2q.rep");
pub const FIGURE8_SL2QI: &str = include_str!("../data/figure8_sl2qi.rep");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub millis: u64,
    /// Items skipped inside the criterion (counted, never passed).
    pub skipped: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    /// Worker threads for corpus checks; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Replacement table entries, keyed by table name.
    pub overrides: BTreeMap<String, GroupPresentation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.status == Status::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.criteria.iter().any(|c| c.status == Status::Fail)
    }

    pub fn line(c: &CriterionResult) -> String {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        format!("[{tag}] {:>2} {:<28} {:>9.3}s  {}", c.id, c.name, c.millis as f64 / 1000.0, c.detail)
    }

    pub fn to_text(&self) -> String {
        self.criteria.iter().map(|c| Self::line(c) + "\n").collect()
    }
}

struct Outcome {
    label: String,
    knot: String,
    in_triangle: bool,
    x_phi: Option<i64>,
    d: usize,
    irreducible: bool,
    kernel_nontrivial: bool,
    dual_witness: bool,
    error: Option<String>,
    torsion_leg: bool,
    orders_leg: bool,
    degree: Option<i64>,
    parity: Option<bool>,
    polynomial: bool,
    delta0_unit: bool,
    symmetry: Option<(bool, bool)>,
}

fn analyze<K: ScalarField>(
    label: String,
    p: &GroupPresentation,
    rep: &Representation<K>,
    in_triangle: bool,
) -> Outcome {
    let mut o = Outcome {
        label,
        knot: p.name.clone().unwrap_or_default(),
        in_triangle,
        x_phi: p.thurston_norm,
        d: rep.dim(),
        irreducible: rep.is_irreducible(),
        kernel_nontrivial: false,
        dual_witness: rep.find_conjugation_to_dual().witness.is_some(),
        error: None,
        torsion_leg: false,
        orders_leg: false,
        degree: None,
        parity: None,
        polynomial: false,
        delta0_unit: false,
        symmetry: None,
    };
    if let Err(e) = analyze_into(&mut o, p, rep) {
        o.error = Some(e.to_string());
    }
    o
}

fn analyze_into<K: ScalarField>(o: &mut Outcome, p: &GroupPresentation, rep: &Representation<K>) -> Result<()> {
    let phi = abelianization(p)?;
    o.kernel_nontrivial = rep.nontrivial_on_kernel(&phi);
    let w = wada_invariant(p, rep, &phi)?;
    let inv = &w.invariant;
    o.torsion_leg = unit_equiv(&inv.representative, &w.torsion, &inv.indeterminacy) == Verdict::Holds;
    let d0 = alexander_order(p, rep, &phi, 0)?.polynomial;
    o.delta0_unit = d0.is_unit();
    o.orders_leg = if inv.is_zero() {
        alexander_order(p, rep, &phi, 1)?.polynomial.is_zero()
    } else {
        laurent_unit_equiv(&torsion_via_orders(p, rep, &phi, false)?, &inv.representative)
    };
    if inv.is_zero() {
        return Ok(());
    }
    o.degree = Some(inv.degree()?);
    if let Some(x) = o.x_phi {
        o.parity = Some(degree_parity_check(inv, rep.dim(), x)?);
    }
    o.polynomial = inv.representative.as_polynomial().is_some();
    if o.irreducible && o.dual_witness {
        let s = symmetry_check(inv, p, rep, &phi, p.b0())?;
        o.symmetry = Some((s.holds && s.rhs_matches, s.inconclusive));
    }
    Ok(())
}

struct Context {
    overrides: BTreeMap<String, GroupPresentation>,
    outcomes: Option<Vec<Outcome>>,
}

impl Context {
    fn table(&self, name: &str) -> Result<GroupPresentation> {
        match self.overrides.get(name) {
            Some(p) => {
                let mut p = p.clone();
                p.name = Some(name.to_string());
                Ok(p)
            }
            None => knot_table(name),
        }
    }

    fn corpus(&mut self) -> Result<&[Outcome]> {
        if self.outcomes.is_none() {
            let mut all = Vec::new();
            for (name, in_triangle) in [("trefoil", true), ("figure8", true), ("5_2", false)] {
                let p = self.table(name)?;
                let reps = enumerate_sl2_reps::<F5>(&p)?;
                let mut out: Vec<Outcome> = reps
                    .par_iter()
                    .enumerate()
                    .map(|(i, e)| analyze(format!("{name} SL(2,F5) #{i}"), &p, &e.rep, in_triangle))
                    .collect();
                all.append(&mut out);
            }
            let trefoil = self.table("trefoil")?;
            let rep = Representation::<Rational>::parse(TREFOIL_SL2Q, Some(&trefoil))?;
            all.push(analyze("trefoil SL(2,Q)".into(), &trefoil, &rep, true));
            self.outcomes = Some(all);
        }
        Ok(self.outcomes.as_deref().expect("just filled"))
    }
}

type Verdict3 = (Status, String, usize);

fn pass(detail: impl Into<String>) -> Result<Verdict3> {
    Ok((Status::Pass, detail.into(), 0))
}

fn fail(detail: impl Into<String>) -> Result<Verdict3> {
    Ok((Status::Fail, detail.into(), 0))
}

fn c1_torus(_: &mut Context) -> Result<Verdict3> {
    let v = torus_fixture().torsion()?.value;
    if v == -RationalFunction::<Rational>::one() {
        pass("τ = -1")
    } else {
        fail(format!("τ = {v}"))
    }
}

fn c2_duality(_: &mut Context) -> Result<Verdict3> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    for k in 0..200 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, k % 2 == 0);
        if !c.check_duality_lemma()? {
            return fail(format!("F101 complex #{k} dims {:?}", c.dims()));
        }
        let c = random_complex::<Rational, _>(&mut rng, 5, 6, k % 2 == 0);
        if !c.check_duality_lemma()? {
            return fail(format!("Q complex #{k} dims {:?}", c.dims()));
        }
    }
    pass("200 complexes over F101 and 200 over Q")
}

fn c3_ses(_: &mut Context) -> Result<Verdict3> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e5);
    for k in 0..100 {
        let s = random_ses::<F7, _>(&mut rng, 5, 6, k % 3 == 0)?;
        match ses_torsion_check(&s.sub, &s.total, &s.quotient) {
            Ok(true) => {}
            Ok(false) => return fail(format!("sequence #{k}")),
            Err(Error::BothFactorsZero) => return fail(format!("sequence #{k}: both factor torsions vanish")),
            Err(e) => return Err(e),
        }
    }
    pass("100 sequences over F7")
}

fn c4_base_change(_: &mut Context) -> Result<Verdict3> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbc);
    let mut done = 0;
    while done < 100 {
        let c = random_complex::<F101, _>(&mut rng, 5, 6, true);
        let i = rng.gen_range(0..=c.length());
        let n = c.dims()[i];
        if n < 2 {
            continue;
        }
        done += 1;
        let tau = c.torsion()?.value;
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n - 1));
        let b = if b >= a { b + 1 } else { b };
        let mut swap = Matrix::<F101>::identity(n);
        swap.swap_cols(a, b);
        if c.base_change(i, &swap)?.torsion()?.value != -tau {
            return fail(format!("swap in degree {i} did not negate τ"));
        }
        let f = loop {
            let f = F101::random(&mut rng);
            if !f.is_zero() {
                break f;
            }
        };
        let mut scale = Matrix::<F101>::identity(n);
        let mut rows = scale.to_rows();
        rows[a][a] = f;
        scale = Matrix::from_rows(rows)?;
        let expected = if i % 2 == 0 { f * tau } else { tau / f };
        if c.base_change(i, &scale)?.torsion()?.value != expected {
            return fail(format!("scaling in degree {i} did not give f^((-1)^i) τ"));
        }
    }
    pass("100 complexes, swap and scale")
}

/// Values derived by hand with Fox calculus.
const CLASSICAL: [(&str, &str); 2] = [("trefoil", "t^2 - t + 1"), ("figure8", "t^2 - 3*t + 1")];

fn c5_classical(ctx: &mut Context) -> Result<Verdict3> {
    let mut notes = Vec::new();
    for (name, delta) in CLASSICAL {
        let p = ctx.table(name)?;
        let phi = abelianization(&p)?;
        let rep = Representation::<Rational>::trivial(p.generator_count(), 1);
        let got = alexander_order(&p, &rep, &phi, 1)?.polynomial;
        let expected = LaurentPoly::parse(delta, 1)?;
        if !laurent_unit_equiv(&RationalFunction::from_poly(got.clone()), &RationalFunction::from_poly(expected)) {
            return fail(format!("{name}: Δ1 = {got}, expected {delta}"));
        }
        notes.push(format!("{name} Δ1 = {got}"));
    }
    let unknot = ctx.table("unknot")?;
    let phi = abelianization(&unknot)?;
    let w = wada_invariant(&unknot, &Representation::<Rational>::trivial(1, 1), &phi)?;
    let expected = RationalFunction::parse("(1)/(t - 1)", 1)?;
    if !unit_equiv(&w.invariant.representative, &expected, &w.invariant.indeterminacy).holds() {
        return fail(format!("unknot: {}", w.invariant.representative));
    }
    notes.push(format!("unknot {}", w.invariant.representative));
    pass(notes.join("; "))
}

fn c6_triangle(ctx: &mut Context) -> Result<Verdict3> {
    let outcomes = ctx.corpus()?;
    let mut n = 0;
    for o in outcomes.iter().filter(|o| o.in_triangle) {
        n += 1;
        if let Some(e) = &o.error {
            return fail(format!("{}: {e}", o.label));
        }
        if !o.torsion_leg {
            return fail(format!("{}: minor ratio and torsion differ", o.label));
        }
        if !o.orders_leg {
            return fail(format!("{}: Δ1/Δ0 differs from the invariant", o.label));
        }
    }
    pass(format!("{n} representations"))
}

fn c7_symmetry(ctx: &mut Context) -> Result<Verdict3> {
    let outcomes = ctx.corpus()?;
    let (mut n, mut zero) = (0, 0);
    for o in outcomes.iter().filter(|o| o.in_triangle && o.irreducible && o.dual_witness) {
        match o.symmetry {
            Some((true, false)) => n += 1,
            Some((_, true)) => return fail(format!("{}: inconclusive", o.label)),
            Some((false, false)) => return fail(format!("{}: symmetry fails", o.label)),
            None if o.degree.is_none() && o.error.is_none() => zero += 1,
            None => return fail(format!("{}: not checked: {:?}", o.label, o.error)),
        }
    }
    if n == 0 {
        return fail("no irreducible conjugate-to-dual representation in the corpus");
    }
    Ok((
        Status::Pass,
        format!("{n} irreducible conjugate-to-dual representations; {zero} zero invariants skipped"),
        zero,
    ))
}

fn c8_parity(ctx: &mut Context) -> Result<Verdict3> {
    let p = ctx.table("trefoil")?;
    let phi = abelianization(&p)?;
    let w = wada_invariant(&p, &Representation::<Rational>::trivial(2, 1), &phi)?;
    let deg = w.invariant.degree()?;
    if deg % 2 == 0 || !degree_parity_check(&w.invariant, 1, 1)? {
        return fail(format!("trivial trefoil: degree {deg}"));
    }
    let outcomes = ctx.corpus()?;
    let mut checked: BTreeMap<&str, usize> = BTreeMap::new();
    let mut zero = 0;
    for o in outcomes.iter().filter(|o| o.d == 2 && o.x_phi == Some(1)) {
        if let Some(e) = &o.error {
            return fail(format!("{}: {e}", o.label));
        }
        match (o.degree, o.parity) {
            (Some(deg), Some(true)) if deg % 2 == 0 => *checked.entry(o.knot.as_str()).or_default() += 1,
            (Some(deg), _) => return fail(format!("{}: degree {deg}", o.label)),
            (None, _) => zero += 1,
        }
    }
    let counts: Vec<String> = checked.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok((
        Status::Pass,
        format!("even degree: {}; trivial trefoil degree {deg}; {zero} zero invariants skipped", counts.join(", ")),
        zero,
    ))
}

fn c9_polynomiality(ctx: &mut Context) -> Result<Verdict3> {
    let outcomes = ctx.corpus()?;
    let mut n = 0;
    for o in outcomes.iter().filter(|o| o.in_triangle && o.irreducible && o.kernel_nontrivial) {
        if let Some(e) = &o.error {
            return fail(format!("{}: {e}", o.label));
        }
        if !o.delta0_unit {
            return fail(format!("{}: Δ0 is not a unit", o.label));
        }
        if o.degree.is_some() && !o.polynomial {
            return fail(format!("{}: invariant is not a Laurent polynomial", o.label));
        }
        n += 1;
    }
    if n == 0 {
        return fail("no irreducible representation nontrivial on the kernel");
    }
    pass(format!("{n} representations, 0 inconclusive"))
}

fn palindrome_of_rep<K: ScalarField>(p: &GroupPresentation, rep: &Representation<K>) -> Result<String> {
    let phi = abelianization(p)?;
    let w = wada_invariant(p, rep, &phi)?;
    let pal = palindromic_normalize(&w.invariant)?
        .ok_or_else(|| Error::Hypothesis(format!("no symmetric shift of {}", w.invariant.representative)))?;
    let poly = w.invariant.representative.as_polynomial().ok_or(Error::NotPolynomial)?;
    if crate::report::shifted(&poly, pal.shift) != pal.expand() {
        return Err(Error::Internal("palindrome expansion mismatch".into()));
    }
    let coeffs: Vec<String> = pal.coeffs.iter().map(ToString::to_string).collect();
    Ok(format!("shift t^{}, a = [{}]", pal.shift, coeffs.join(", ")))
}

fn c10_palindrome(ctx: &mut Context) -> Result<Verdict3> {
    let trefoil = ctx.table("trefoil")?;
    let figure8 = ctx.table("figure8")?;
    let rep_t = Representation::<Rational>::parse(TREFOIL_SL2Q, Some(&trefoil))?;
    let rep_f = Representation::<GaussRational>::parse(FIGURE8_SL2QI, Some(&figure8))?;
    let t = palindrome_of_rep(&trefoil, &rep_t);
    let f = palindrome_of_rep(&figure8, &rep_f);
    match (t, f) {
        (Ok(t), Ok(f)) => pass(format!("trefoil/Q {t}; figure8/Q(i) {f}")),
        (Err(e), _) => fail(format!("trefoil: {e}")),
        (_, Err(e)) => fail(format!("figure8: {e}")),
    }
}

fn c11_sym(ctx: &mut Context) -> Result<Verdict3> {
    let trefoil = ctx.table("trefoil")?;
    let rep = Representation::<Rational>::parse(TREFOIL_SL2Q, Some(&trefoil))?;
    for k in 1..=5 {
        let s = sym_power(&rep, k)?;
        if sym_dimension(2, k) != k + 1 || s.dim() != k + 1 {
            return fail(format!("sym^{k} has dimension {}", s.dim()));
        }
    }
    let s2 = sym_power(&rep, 2)?;
    s2.validate(&trefoil)?;
    if s2.find_conjugation_to_dual().witness.is_none() {
        return fail("sym^2 has no duality witness");
    }
    let phi = abelianization(&trefoil)?;
    let w = wada_invariant(&trefoil, &s2, &phi)?;
    let deg = w.invariant.degree()?;
    if deg % 2 != 1 || !degree_parity_check(&w.invariant, 3, 1)? {
        return fail(format!("sym^2 invariant {} has degree {deg}", w.invariant.representative));
    }
    pass(format!("dims 2..6; sym^2 invariant {} of degree {deg}", w.invariant.representative))
}

fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| Letter::new(rng.gen_range(0..n), rng.gen_bool(0.5))))
}

fn c12_fox(_: &mut Context) -> Result<Verdict3> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0c);
    let n = 3;
    for k in 0..200 {
        let images: Vec<Matrix<F7>> = (0..n).map(|_| random_invertible(&mut rng, 3)).collect();
        let rho = MatrixImages::from_invertible(images)?;
        let id = Matrix::<F7>::identity(3);
        let w = random_word(&mut rng, n, 16);
        let grad = fox_gradient(&w, &rho)?;
        let sum = (0..n).fold(Matrix::zeros(3, 3), |acc, j| &acc + &(&grad[j] * &(rho.image(j) - &id)));
        if sum != &rho.eval(&w)? - &id {
            return fail(format!("fundamental identity, word #{k}"));
        }
        let v = random_word(&mut rng, n, 16);
        let gv = fox_gradient(&v, &rho)?;
        let guv = fox_gradient(&w.concat(&v), &rho)?;
        let rw = rho.eval(&w)?;
        for j in 0..n {
            if guv[j] != &grad[j] + &(&rw * &gv[j]) {
                return fail(format!("product rule, word #{k}, generator {j}"));
            }
        }
    }
    pass("200 word pairs over GL(3,F7)")
}

type CriterionFn = fn(&mut Context) -> Result<Verdict3>;

const CRITERIA: [(u32, &str, CriterionFn, Option<u64>); 12] = [
    (1, "torus fixture", c1_torus, Some(1)),
    (2, "duality lemma", c2_duality, Some(30)),
    (3, "SES multiplicativity", c3_ses, Some(60)),
    (4, "base-change laws", c4_base_change, None),
    (5, "classical values", c5_classical, Some(1)),
    (6, "Wada/torsion/orders", c6_triangle, Some(300)),
    (7, "symmetry theorem", c7_symmetry, Some(300)),
    (8, "degree parity", c8_parity, None),
    (9, "polynomiality", c9_polynomiality, None),
    (10, "palindrome", c10_palindrome, None),
    (11, "sym^k sanity", c11_sym, None),
    (12, "Fox identities", c12_fox, None),
];

/// Runs every criterion in order; an error inside a criterion fails it.
pub fn run_selftest(opts: &SelftestOptions) -> Result<SelftestReport> {
    run_selftest_with(opts, |_| {})
}

/// As `run_selftest`, calling `progress` after each criterion.
pub fn run_selftest_with(opts: &SelftestOptions, mut progress: impl FnMut(&CriterionResult)) -> Result<SelftestReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let mut ctx = Context { overrides: opts.overrides.clone(), outcomes: None };
    let mut criteria = Vec::new();
    for (id, name, f, limit) in CRITERIA {
        let start = Instant::now();
        let result = pool.install(|| f(&mut ctx));
        let elapsed = start.elapsed();
        let (mut status, mut detail, skipped) = match result {
            Ok(v) => v,
            Err(e) => (Status::Fail, format!("error: {e}"), 0),
        };
        if let Some(secs) = limit {
            if status == Status::Pass && elapsed > Duration::from_secs(secs) {
                status = Status::Fail;
                detail = format!("{detail}; exceeded {secs} s");
            }
        }
        let c = CriterionResult {
            id,
            name: name.to_string(),
            status,
            detail,
            millis: elapsed.as_millis() as u64,
            skipped,
        };
        progress(&c);
        criteria.push(c);
    }
    Ok(SelftestReport { criteria })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        let mut ctx = Context { overrides: BTreeMap::new(), outcomes: None };
        for f in [c1_torus, c5_classical, c10_palindrome, c11_sym] {
            let (status, detail, _) = f(&mut ctx).unwrap();
            assert_eq!(status, Status::Pass, "{detail}");
        }
    }

    #[test]
    fn corrupted_entry_fails_classical_values() {
        let bad = GroupPresentation::from_words(2, &["a b A B a B A b a B"]).unwrap();
        let mut overrides = BTreeMap::new();
        overrides.insert("trefoil".to_string(), bad);
        let mut ctx = Context { overrides, outcomes: None };
        let (status, detail, _) = c5_classical(&mut ctx).unwrap();
        assert_eq!(status, Status::Fail);
        assert!(detail.contains("trefoil"));
    }
}
