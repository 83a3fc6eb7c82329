use super::{sign, TwistedAlexInvariant};
use crate::algebra::{pow, LaurentPoly, Monomial, RationalFunction, Ring, ScalarField};
use crate::error::Result;
use crate::fox::{abelianization, AbelianizationMap, GroupPresentation};
use crate::reps::Representation;

/// Outcome of testing `conj τ(t^{-1}) = (-1)^{d·b_0} det α(g) φ(g)^d τ(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport<K: ScalarField> {
    pub holds: bool,
    /// The quotient is a unit of the right shape but no `g` was found within
    /// the search bound.
    pub inconclusive: bool,
    /// `(-1)^{d·b_0}`.
    pub sign: i64,
    /// `u = c·t^e` with `conj τ(t^{-1}) = (-1)^{d·b_0} u τ(t)`, when it is a unit.
    pub unit: Option<(K, Vec<i32>)>,
    /// Generator exponents of a witness `g`.
    pub witness: Option<Vec<i64>>,
    /// Meridian coordinates of `g` in `H_1`, when meridians are known.
    pub charge: Option<Vec<i64>>,
    /// Whether the charge satisfies `n_i ≡ 1 + Σ_{j≠i} lk(L_i, L_j) (mod 2)`.
    pub charge_valid: Option<bool>,
    /// The right-hand side recomputed from the witness equals the left.
    pub rhs_matches: bool,
}

fn search_bound(n: usize) -> i64 {
    match n {
        0..=3 => 8,
        4 => 4,
        _ => 2,
    }
}

fn charge_ok(charge: &[i64], lk: Option<&Vec<Vec<i64>>>) -> bool {
    (0..charge.len()).all(|i| {
        let s: i64 = (0..charge.len())
            .filter(|&j| j != i)
            .map(|j| lk.and_then(|m| m.get(i).and_then(|r| r.get(j))).copied().unwrap_or(0))
            .sum();
        (charge[i] - 1 - s).rem_euclid(2) == 0
    })
}

/// Searches `g` over generator exponent vectors with entries in a bounded
/// box (`[-8, 8]` for up to three generators). The reported witness has a
/// valid charge when one exists and the smallest exponent sum among those. `b0` is the number of boundary components.
pub fn symmetry_check<K: ScalarField>(
    inv: &TwistedAlexInvariant<K>,
    p: &GroupPresentation,
    rep: &Representation<K>,
    phi: &AbelianizationMap,
    b0: usize,
) -> Result<SymmetryReport<K>> {
    let d = rep.dim();
    let e_sign = (d * b0) as i64;
    let sgn = if e_sign % 2 == 0 { 1 } else { -1 };
    let tau = &inv.representative;
    let mut report = SymmetryReport {
        holds: false,
        inconclusive: false,
        sign: sgn,
        unit: None,
        witness: None,
        charge: None,
        charge_valid: None,
        rhs_matches: false,
    };
    if tau.is_zero() {
        report.holds = true;
        report.rhs_matches = true;
        return Ok(report);
    }
    let lhs = tau.involute();
    let Some((c, e)) = (lhs.clone() / tau.scale(&sign::<K>(e_sign))).as_monomial_unit() else {
        return Ok(report);
    };
    report.unit = Some((c.clone(), e.clone()));
    if e.iter().any(|&x| x.rem_euclid(d as i32) != 0) {
        return Ok(report);
    }
    let target: Vec<i64> = e.iter().map(|&x| (x / d as i32) as i64).collect();

    let n = p.generator_count();
    let dets: Vec<K> = rep.images().iter().map(|m| m.det().expect("square")).collect();
    let meridian_map = if p.meridians.is_some() { abelianization(p).ok() } else { None };
    let bound = search_bound(n);
    let mut best: Option<((bool, i64), Vec<i64>, Option<Vec<i64>>, Option<bool>)> = None;
    let mut g = vec![-bound; n];
    loop {
        let image: Vec<i64> = (0..phi.rank())
            .map(|k| (0..n).map(|j| g[j] * phi.image(j)[k]).sum())
            .collect();
        if image == target {
            let det = (0..n).fold(K::one(), |acc, j| acc * pow(&dets[j], g[j]));
            if det == c {
                let charge = meridian_map.as_ref().map(|m| {
                    (0..m.rank()).map(|k| (0..n).map(|j| g[j] * m.image(j)[k]).sum()).collect::<Vec<i64>>()
                });
                let valid = charge.as_ref().map(|ch| charge_ok(ch, p.linking.as_ref()));
                let key = (valid == Some(false), g.iter().map(|x| x.abs()).sum::<i64>());
                if best.as_ref().is_none_or(|(k, ..)| key < *k) {
                    best = Some((key, g.clone(), charge, valid));
                }
            }
        }
        // Odometer over the box.
        let mut k = 0;
        while k < n && g[k] == bound {
            g[k] = -bound;
            k += 1;
        }
        if k == n {
            break;
        }
        g[k] += 1;
    }

    match best {
        Some((_, w, charge, valid)) => {
            let rank = tau.rank();
            let exps: Vec<i32> = e.clone();
            let unit = LaurentPoly::term(c.clone(), Monomial::new(&exps), rank);
            let rhs = tau.clone() * RationalFunction::from_poly(unit.scale(&sign::<K>(e_sign)));
            report.rhs_matches = rhs == lhs;
            report.holds = report.rhs_matches;
            report.witness = Some(w);
            report.charge = charge;
            report.charge_valid = valid;
        }
        None => report.inconclusive = true,
    }
    Ok(report)
}
