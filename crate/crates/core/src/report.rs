//! JSON and text reports for invariant computations.
//!
//! Every polynomial is emitted as a string next to the indeterminacy it is
//! defined up to. Serialization is deterministic: parsing a report and
//! writing it again reproduces the same bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{LaurentPoly, RationalFunction, Ring, ScalarField};
use crate::error::{Error, Result};
use crate::fox::GroupPresentation;
use crate::invariants::{Indeterminacy, OrderValue, Palindrome, SymmetryReport, TwistedAlexInvariant};
use crate::reps::Representation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndeterminacyRecord {
    pub d: usize,
    pub det_generators: Vec<String>,
    /// All of `det(α(π))` when it is finite.
    pub det_subgroup: Option<Vec<String>>,
    pub sign_allowed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryRecord {
    pub holds: bool,
    pub inconclusive: bool,
    pub sign: i64,
    pub unit_coefficient: Option<String>,
    pub unit_exponents: Option<Vec<i32>>,
    pub witness: Option<Vec<i64>>,
    pub charge: Option<Vec<i64>>,
    pub charge_valid: Option<bool>,
    pub rhs_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParityRecord {
    pub d: usize,
    pub x_phi: i64,
    pub degree: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PalindromeRecord {
    pub symmetric: bool,
    pub shift: Option<i32>,
    /// `a_0, ..., a_l` of `Σ a_i (t^{-i} + t^i)`.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrdersRecord {
    pub delta0: String,
    pub delta1: String,
    /// `Δ_1/Δ_0` when `Δ_0 ≠ 0`.
    pub ratio: Option<String>,
    /// Whether the ratio equals the invariant up to units of `K[t^{±1}]`.
    pub matches_invariant: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input_hash: String,
    pub presentation: String,
    pub field: String,
    pub dim: usize,
    /// The computed representative.
    pub representative: String,
    /// The representative normalized by an arbitrary unit of `K[t^{±1}]`.
    pub canonical: String,
    pub indeterminacy: IndeterminacyRecord,
    pub acyclic: bool,
    pub degree: Option<i64>,
    pub symmetry: Option<SymmetryRecord>,
    pub parity: Option<ParityRecord>,
    pub palindrome: Option<PalindromeRecord>,
    pub orders: Option<OrdersRecord>,
}

/// SHA-256 of the presentation and representation texts.
pub fn input_hash<K: ScalarField>(p: &GroupPresentation, rep: &Representation<K>) -> String {
    let mut h = Sha256::new();
    h.update(K::spec().to_string().as_bytes());
    h.update(b"\n");
    h.update(p.to_text().as_bytes());
    h.update(b"\n");
    h.update(rep.to_text(Some(p)).as_bytes());
    hex::encode(h.finalize())
}

/// Scales the numerator to a monic polynomial with lowest term `t^0`
/// (lowest in the monomial order for several variables).
pub fn canonical<K: ScalarField>(f: &RationalFunction<K>) -> RationalFunction<K> {
    if f.is_zero() {
        return f.clone();
    }
    let num = f.numer();
    let low = num.terms().next().expect("nonzero").0.inv();
    let c = num.leading().expect("nonzero").1.inv().expect("nonzero coefficient");
    f.shift(&low).scale(&c)
}

impl IndeterminacyRecord {
    pub fn new<K: ScalarField>(ind: &Indeterminacy<K>) -> Self {
        let strings = |v: &[K]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        IndeterminacyRecord {
            d: ind.d,
            det_generators: strings(&ind.det.generators),
            det_subgroup: ind.det.elements.as_deref().map(|e| {
                let mut s = strings(e);
                s.sort();
                s
            }),
            sign_allowed: ind.sign_allowed,
        }
    }
}

impl SymmetryRecord {
    pub fn new<K: ScalarField>(s: &SymmetryReport<K>) -> Self {
        SymmetryRecord {
            holds: s.holds,
            inconclusive: s.inconclusive,
            sign: s.sign,
            unit_coefficient: s.unit.as_ref().map(|(c, _)| c.to_string()),
            unit_exponents: s.unit.as_ref().map(|(_, e)| e.clone()),
            witness: s.witness.clone(),
            charge: s.charge.clone(),
            charge_valid: s.charge_valid,
            rhs_matches: s.rhs_matches,
        }
    }
}

impl PalindromeRecord {
    pub fn new<K: ScalarField>(p: Option<&Palindrome<K>>) -> Self {
        match p {
            Some(p) => PalindromeRecord {
                symmetric: true,
                shift: Some(p.shift),
                coefficients: p.coeffs.iter().map(ToString::to_string).collect(),
            },
            None => PalindromeRecord { symmetric: false, shift: None, coefficients: Vec::new() },
        }
    }
}

impl OrdersRecord {
    pub fn new<K: ScalarField>(
        d0: &OrderValue<K>,
        d1: &OrderValue<K>,
        inv: &TwistedAlexInvariant<K>,
    ) -> Result<Self> {
        let ratio = if d0.polynomial.is_zero() {
            None
        } else {
            Some(RationalFunction::new(d1.polynomial.clone(), d0.polynomial.clone())?)
        };
        Ok(OrdersRecord {
            delta0: d0.polynomial.to_string(),
            delta1: d1.polynomial.to_string(),
            matches_invariant: ratio
                .as_ref()
                .map(|r| crate::invariants::laurent_unit_equiv(r, &inv.representative)),
            ratio: ratio.map(|r| r.to_string()),
        })
    }
}

impl InvariantReport {
    pub fn new<K: ScalarField>(
        name: &str,
        p: &GroupPresentation,
        rep: &Representation<K>,
        inv: &TwistedAlexInvariant<K>,
        acyclic: bool,
    ) -> Self {
        InvariantReport {
            input_hash: input_hash(p, rep),
            presentation: name.to_string(),
            field: K::spec().to_string(),
            dim: rep.dim(),
            representative: inv.representative.to_string(),
            canonical: canonical(&inv.representative).to_string(),
            indeterminacy: IndeterminacyRecord::new(&inv.indeterminacy),
            acyclic,
            degree: if inv.rank() <= 1 { inv.degree().ok() } else { None },
            symmetry: None,
            parity: None,
            palindrome: None,
            orders: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    /// Aligned `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("presentation", self.presentation.clone()),
            ("field", self.field.clone()),
            ("dimension", self.dim.to_string()),
            ("representative", self.representative.clone()),
            ("canonical", self.canonical.clone()),
            (
                "units",
                format!(
                    "{}f^{} * det {}",
                    if self.indeterminacy.sign_allowed { "±" } else { "" },
                    self.indeterminacy.d,
                    match &self.indeterminacy.det_subgroup {
                        Some(e) => format!("{{{}}}", e.join(", ")),
                        None => format!("<{}>", self.indeterminacy.det_generators.join(", ")),
                    }
                ),
            ),
            ("acyclic", self.acyclic.to_string()),
        ];
        if let Some(d) = self.degree {
            rows.push(("degree", d.to_string()));
        }
        if let Some(o) = &self.orders {
            rows.push(("delta0", o.delta0.clone()));
            rows.push(("delta1", o.delta1.clone()));
            if let Some(m) = o.matches_invariant {
                rows.push(("orders match", m.to_string()));
            }
        }
        if let Some(s) = &self.symmetry {
            let verdict = if s.holds {
                "holds"
            } else if s.inconclusive {
                "inconclusive"
            } else {
                "fails"
            };
            rows.push(("symmetry", verdict.to_string()));
            if let (Some(c), Some(e)) = (&s.unit_coefficient, &s.unit_exponents) {
                let e: Vec<String> = e.iter().map(ToString::to_string).collect();
                rows.push(("symmetry unit", format!("sign {}, c = {c}, t^({})", s.sign, e.join(", "))));
            }
            if let Some(w) = &s.witness {
                rows.push(("witness g", format!("{w:?}")));
            }
            if let Some(v) = s.charge_valid {
                rows.push(("charge valid", v.to_string()));
            }
        }
        if let Some(p) = &self.parity {
            rows.push(("parity", format!("{} (deg {}, d*x = {})", p.holds, p.degree, p.d as i64 * p.x_phi)));
        }
        if let Some(p) = &self.palindrome {
            match p.shift {
                Some(k) => rows.push(("palindrome", format!("shift t^{k}, a = [{}]", p.coefficients.join(", ")))),
                None => rows.push(("palindrome", "no symmetric shift".to_string())),
            }
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

/// `t^{shift}·p`, the polynomial a palindrome record describes.
pub fn shifted<K: ScalarField>(p: &LaurentPoly<K>, shift: i32) -> LaurentPoly<K> {
    p.shift(&crate::algebra::Monomial::new(&[shift]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::fox::{abelianization, knot_table};
    use crate::invariants::{symmetry_check, wada_invariant};

    #[test]
    fn canonical_form() {
        let f = RationalFunction::<Rational>::parse("(-2*t^3 + 2*t^2 - 2*t)/(t - 1)", 1).unwrap();
        assert_eq!(canonical(&f).to_string(), "(t^2 - t + 1)/(t - 1)");
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let p = knot_table("trefoil").unwrap();
        let phi = abelianization(&p).unwrap();
        let rep = Representation::<Rational>::trivial(2, 1);
        let w = wada_invariant(&p, &rep, &phi).unwrap();
        let mut r = InvariantReport::new("trefoil", &p, &rep, &w.invariant, w.acyclic);
        r.symmetry = Some(SymmetryRecord::new(&symmetry_check(&w.invariant, &p, &rep, &phi, 1).unwrap()));
        let json = r.to_json();
        let back = InvariantReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
        assert_eq!(r.input_hash.len(), 64);
        assert!(r.to_text().contains("canonical"));
    }
}
