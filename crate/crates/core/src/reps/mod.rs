//! Linear representations of finitely presented groups.

mod enumerate;
mod irreducible;
mod sym;

pub use enumerate::{enumerate_sl2_reps, sl2_elements, EnumeratedRep};
pub use irreducible::{enveloping_dimension, KernelTest};
pub use sym::{sym_dimension, sym_matrix, sym_power};

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{pow, LaurentPoly, Matrix, ScalarField};
use crate::error::{Error, Result};
use crate::fox::{AbelianizationMap, GroupPresentation, MatrixImages, Word};

/// A homomorphism `α: π → GL(d, K)` given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<K: ScalarField> {
    images: MatrixImages<K>,
}

/// Result of searching for `P` with `P·α(x_i)·P^{-1} = α^†(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualitySearch<K: ScalarField> {
    pub witness: Option<Matrix<K>>,
    /// The solution space was only sampled, so absence is not certain.
    pub probabilistic: bool,
}

/// The subgroup `det(α(π)) ⊂ K^×`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetSubgroupData<K: ScalarField> {
    /// `det α(x_i)` for every generator.
    pub generators: Vec<K>,
    /// All elements, when the subgroup is finite (always for finite fields).
    pub elements: Option<Vec<K>>,
}

const DET_CLOSURE_LIMIT: usize = 1024;
const DET_EXPONENT_BOUND: i64 = 8;

impl<K: ScalarField> DetSubgroupData<K> {
    pub fn new(generators: Vec<K>) -> Self {
        let mut seen: HashSet<K> = HashSet::new();
        let mut frontier = vec![K::one()];
        seen.insert(K::one());
        let mut finite = true;
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = x.clone() * g.clone();
                if seen.insert(y.clone()) {
                    if seen.len() > DET_CLOSURE_LIMIT {
                        finite = false;
                        break;
                    }
                    frontier.push(y);
                }
            }
            if !finite {
                break;
            }
        }
        // Closed under multiplication by nonzero generators of a finite set
        // means closed under inverses too.
        let elements = finite.then(|| {
            let mut v: Vec<K> = seen.into_iter().collect();
            v.sort_by_key(ToString::to_string);
            v
        });
        DetSubgroupData { generators, elements }
    }

    pub fn trivial() -> Self {
        DetSubgroupData::new(Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_one())
    }

    /// Exact answer for finite subgroups; otherwise `Some(true)` when `c` is
    /// a product of generator powers with exponents in `[-8, 8]` and `None`
    /// when that bounded search fails.
    pub fn contains(&self, c: &K) -> Option<bool> {
        if let Some(el) = &self.elements {
            return Some(el.contains(c));
        }
        let mut reachable = vec![K::one()];
        for g in &self.generators {
            let powers: Vec<K> = (-DET_EXPONENT_BOUND..=DET_EXPONENT_BOUND).map(|e| pow(g, e)).collect();
            let mut next = Vec::with_capacity(reachable.len() * powers.len());
            for r in &reachable {
                for p in &powers {
                    next.push(r.clone() * p.clone());
                }
            }
            next.sort_by_key(ToString::to_string);
            next.dedup();
            reachable = next;
        }
        reachable.contains(c).then_some(true)
    }
}

impl<K: ScalarField> Representation<K> {
    pub fn new(images: Vec<Matrix<K>>) -> Result<Self> {
        Ok(Representation { images: MatrixImages::from_invertible(images)? })
    }

    /// Representation whose generator images satisfy every relator.
    pub fn for_presentation(p: &GroupPresentation, images: Vec<Matrix<K>>) -> Result<Self> {
        let rep = Representation::new(images)?;
        rep.validate(p)?;
        Ok(rep)
    }

    /// The trivial `d`-dimensional representation.
    pub fn trivial(generators: usize, d: usize) -> Self {
        Representation::new(vec![Matrix::identity(d); generators]).expect("identity is invertible")
    }

    pub fn validate(&self, p: &GroupPresentation) -> Result<()> {
        self.images.check_relators(p)
    }

    pub fn dim(&self) -> usize {
        self.images.dim()
    }

    pub fn generator_count(&self) -> usize {
        self.images.generator_count()
    }

    pub fn image(&self, i: usize) -> &Matrix<K> {
        self.images.image(i)
    }

    pub fn images(&self) -> &[Matrix<K>] {
        self.images.images()
    }

    pub fn matrix_images(&self) -> &MatrixImages<K> {
        &self.images
    }

    pub fn eval(&self, w: &Word) -> Result<Matrix<K>> {
        self.images.eval(w)
    }

    /// `α^†(g) = conj(α(g^{-1}))^T`.
    pub fn dual(&self) -> Self {
        let n = self.generator_count();
        let images = (0..n).map(|i| self.images.inverse(i).conj_transpose()).collect();
        let inverses = (0..n).map(|i| self.images.image(i).conj_transpose()).collect();
        Representation { images: MatrixImages::new(images, inverses).expect("dual of invertible") }
    }

    /// Does `P` intertwine `α` with its dual on every generator?
    pub fn is_duality_witness(&self, p: &Matrix<K>) -> bool {
        let dual = self.dual();
        p.is_square()
            && p.rows() == self.dim()
            && !p.det().expect("square").is_zero()
            && (0..self.generator_count()).all(|i| (p * self.image(i)) == (dual.image(i) * p))
    }

    /// Basis of the intertwiner space `{P : P·α(x_i) = α^†(x_i)·P}`.
    pub fn dual_intertwiners(&self) -> Vec<Matrix<K>> {
        let d = self.dim();
        let dual = self.dual();
        let n = self.generator_count();
        let mut system = Matrix::zeros(n * d * d, d * d);
        for r in 0..d {
            for c in 0..d {
                let mut e = Matrix::zeros(d, d);
                e[(r, c)] = K::one();
                for i in 0..n {
                    let eq = &(&e * self.image(i)) - &(dual.image(i) * &e);
                    for (k, x) in eq.entries().iter().enumerate() {
                        system[(i * d * d + k, r * d + c)] = x.clone();
                    }
                }
            }
        }
        let ns = system.nullspace();
        (0..ns.cols())
            .map(|j| Matrix::from_fn(d, d, |r, c| ns[(r * d + c, j)].clone()))
            .collect()
    }

    /// Search for an invertible intertwiner. Basis vectors are tried first,
    /// then every combination when the field is finite and the space small,
    /// else 100 seeded random combinations.
    pub fn find_conjugation_to_dual(&self) -> DualitySearch<K> {
        let basis = self.dual_intertwiners();
        let invertible = |p: &Matrix<K>| !p.det().expect("square").is_zero();
        if basis.is_empty() {
            return DualitySearch { witness: None, probabilistic: false };
        }
        if let Some(p) = basis.iter().find(|p| invertible(p)) {
            return DualitySearch { witness: Some(p.clone()), probabilistic: false };
        }
        let combine = |coeffs: &[K]| {
            basis
                .iter()
                .zip(coeffs)
                .fold(Matrix::zeros(self.dim(), self.dim()), |acc, (b, c)| &acc + &b.scale(c))
        };
        if let Some(elems) = K::elements() {
            let total = (elems.len() as f64).powi(basis.len() as i32);
            if total <= 100_000.0 {
                let mut idx = vec![0usize; basis.len()];
                loop {
                    let coeffs: Vec<K> = idx.iter().map(|&i| elems[i].clone()).collect();
                    let p = combine(&coeffs);
                    if invertible(&p) {
                        return DualitySearch { witness: Some(p), probabilistic: false };
                    }
                    let mut k = 0;
                    while k < idx.len() {
                        idx[k] += 1;
                        if idx[k] < elems.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == idx.len() {
                        return DualitySearch { witness: None, probabilistic: false };
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            let coeffs: Vec<K> = basis.iter().map(|_| K::random(&mut rng)).collect();
            let p = combine(&coeffs);
            if invertible(&p) {
                return DualitySearch { witness: Some(p), probabilistic: false };
            }
        }
        DualitySearch { witness: None, probabilistic: true }
    }

    /// `(α⊗φ)(x_i) = φ(x_i)·α(x_i)` over `K[ℤ^r]`.
    pub fn tensor_with_phi(&self, phi: &AbelianizationMap) -> Result<MatrixImages<LaurentPoly<K>>> {
        if phi.images().len() != self.generator_count() {
            return Err(Error::Shape(format!(
                "φ has {} generator images, α has {}",
                phi.images().len(),
                self.generator_count()
            )));
        }
        let r = phi.rank();
        let mut images = Vec::new();
        let mut inverses = Vec::new();
        for i in 0..self.generator_count() {
            let m = phi.monomial(i);
            let minv = m.inv();
            images.push(self.image(i).map(|x| LaurentPoly::term(x.clone(), m.clone(), r)));
            inverses.push(self.images.inverse(i).map(|x| LaurentPoly::term(x.clone(), minv.clone(), r)));
        }
        MatrixImages::new(images, inverses)
    }

    pub fn det_data(&self) -> DetSubgroupData<K> {
        DetSubgroupData::new(self.images().iter().map(|m| m.det().expect("square")).collect())
    }

    /// Absolute irreducibility: the images span the full matrix algebra.
    pub fn is_irreducible(&self) -> bool {
        enveloping_dimension(self.images()) == self.dim() * self.dim()
    }

    /// Whether `α` restricted to `ker φ` is nontrivial, with a witness.
    pub fn kernel_test(&self, phi: &AbelianizationMap) -> KernelTest {
        irreducible::kernel_test(self, phi)
    }

    pub fn nontrivial_on_kernel(&self, phi: &AbelianizationMap) -> bool {
        self.kernel_test(phi).is_nontrivial()
    }

    /// Parse the representation text format:
    ///
    /// ```text
    /// field: Q
    /// dim: 2
    /// gen a: 1 1 ; 0 1
    /// gen b: 1 0 ; -1 1
    /// ```
    ///
    /// Rows are separated by `;`, entries by whitespace. Generator names
    /// after `gen` are optional; unnamed lines are taken in order.
    pub fn parse(text: &str, p: Option<&GroupPresentation>) -> Result<Self> {
        let parsed = RepText::parse(text)?;
        if parsed.field != K::spec().to_string() {
            return Err(Error::FieldMismatch { expected: K::spec().to_string(), found: parsed.field });
        }
        let mut slots: Vec<Option<Matrix<K>>> = Vec::new();
        let mut next = 0;
        for (name, rows) in &parsed.gens {
            let idx = match (name, p) {
                (Some(n), Some(p)) => p.generator_index(n)?,
                (Some(n), None) => return Err(Error::Parse(format!("named generator `{n}` without a presentation"))),
                (None, _) => next,
            };
            next = idx + 1;
            let m = rows
                .iter()
                .map(|row| row.iter().map(|e| K::parse(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(m)?;
            if m.shape() != (parsed.dim, parsed.dim) {
                return Err(Error::Shape(format!(
                    "generator {} is {}x{}, expected {}x{}",
                    name.clone().unwrap_or_else(|| idx.to_string()),
                    m.rows(),
                    m.cols(),
                    parsed.dim,
                    parsed.dim
                )));
            }
            if slots.len() <= idx {
                slots.resize(idx + 1, None);
            }
            if slots[idx].is_some() {
                return Err(Error::Parse(format!("generator {idx} given twice")));
            }
            slots[idx] = Some(m);
        }
        let count = p.map_or(slots.len(), GroupPresentation::generator_count);
        if slots.len() != count || slots.iter().any(Option::is_none) {
            return Err(Error::Parse(format!("expected images for {count} generators")));
        }
        let images: Vec<Matrix<K>> = slots.into_iter().map(Option::unwrap).collect();
        let rep = Representation::new(images)?;
        if let Some(p) = p {
            rep.validate(p)?;
        }
        Ok(rep)
    }

    pub fn to_text(&self, p: Option<&GroupPresentation>) -> String {
        let mut s = format!("field: {}\ndim: {}\n", K::spec(), self.dim());
        for (i, m) in self.images().iter().enumerate() {
            let rows: Vec<String> = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            match p {
                Some(p) => s += &format!("gen {}: {}\n", p.generators()[i], rows.join(" ; ")),
                None => s += &format!("gen: {}\n", rows.join(" ; ")),
            }
        }
        s
    }
}

/// Untyped contents of a representation file.
#[derive(Clone, Debug, PartialEq)]
pub struct RepText {
    pub field: String,
    pub dim: usize,
    pub gens: Vec<(Option<String>, Vec<Vec<String>>)>,
}

impl RepText {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut dim = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key: value`", lineno + 1)))?;
            let mut key_parts = key.split_whitespace();
            match key_parts.next() {
                Some("field") => field = Some(value.trim().to_string()),
                Some("dim") => {
                    dim = Some(value.trim().parse::<usize>().map_err(|_| {
                        Error::Parse(format!("line {}: bad dimension `{}`", lineno + 1, value.trim()))
                    })?)
                }
                Some("gen") => {
                    let name = key_parts.next().map(str::to_string);
                    let rows = value
                        .split(';')
                        .map(|r| r.split_whitespace().map(str::to_string).collect::<Vec<_>>())
                        .collect();
                    gens.push((name, rows));
                }
                _ => return Err(Error::Parse(format!("line {}: unknown key `{}`", lineno + 1, key.trim()))),
            }
        }
        Ok(RepText {
            field: field.ok_or_else(|| Error::Parse("missing `field:` line".into()))?,
            dim: dim.ok_or_else(|| Error::Parse("missing `dim:` line".into()))?,
            gens,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRational, Rational, Ring, F5};
    use crate::fox::{abelianization, knot_table};

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix<Q> {
        Matrix::from_rows(vec![vec![q(a), q(b)], vec![q(c), q(d)]]).unwrap()
    }

    fn trefoil_rep() -> Representation<Q> {
        let p = knot_table("trefoil").unwrap();
        Representation::for_presentation(&p, vec![m2(1, 1, 0, 1), m2(1, 0, -1, 1)]).unwrap()
    }

    #[test]
    fn dual_examples() {
        let p = knot_table("trefoil").unwrap();
        let triv = Representation::<Q>::trivial(2, 2);
        assert_eq!(triv.dual(), triv);
        let one = Representation::new(vec![Matrix::scalar(1, q(2))]).unwrap();
        assert_eq!(one.dual().image(0)[(0, 0)], Q::new(1, 2));
        let a = trefoil_rep();
        assert_eq!(a.dual().dual(), a);
        a.dual().validate(&p).unwrap();
    }

    #[test]
    fn sl2_witness_is_j() {
        let a = trefoil_rep();
        let j = m2(0, 1, -1, 0);
        assert!(a.is_duality_witness(&j));
        let found = a.find_conjugation_to_dual();
        assert!(a.is_duality_witness(found.witness.as_ref().unwrap()));
        let two = Representation::new(vec![Matrix::scalar(1, q(2))]).unwrap();
        assert_eq!(two.find_conjugation_to_dual(), DualitySearch { witness: None, probabilistic: false });
        let triv = Representation::<Q>::trivial(1, 1);
        assert!(triv.find_conjugation_to_dual().witness.unwrap()[(0, 0)].is_one());
    }

    #[test]
    fn tensor_determinant_identity() {
        let p = knot_table("trefoil").unwrap();
        let phi = abelianization(&p).unwrap();
        let a = trefoil_rep();
        let t = a.tensor_with_phi(&phi).unwrap();
        for i in 0..2 {
            let lhs = t.image(i).det().unwrap();
            let fd = LaurentPoly::term(Q::one(), phi.monomial(i).pow(2), 1);
            assert_eq!(lhs, fd.scale(&a.image(i).det().unwrap()));
        }
        let triv = Representation::<Q>::trivial(2, 1).tensor_with_phi(&phi).unwrap();
        assert_eq!(triv.image(0)[(0, 0)], LaurentPoly::t());
    }

    #[test]
    fn det_subgroups() {
        let d = DetSubgroupData::new(vec![F5::new(2)]);
        assert_eq!(d.elements.as_ref().unwrap().len(), 4);
        assert_eq!(d.contains(&F5::new(3)), Some(true));
        let d = DetSubgroupData::new(vec![F5::new(4)]);
        assert_eq!(d.contains(&F5::new(2)), Some(false));
        let d = DetSubgroupData::new(vec![q(2)]);
        assert!(d.elements.is_none());
        assert_eq!(d.contains(&Q::new(1, 8)), Some(true));
        assert_eq!(d.contains(&q(3)), None);
        let d = DetSubgroupData::new(vec![q(-1)]);
        assert_eq!(d.contains(&q(1)), Some(true));
        assert_eq!(d.contains(&q(2)), Some(false));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let p = knot_table("trefoil").unwrap();
        let a = trefoil_rep();
        let text = a.to_text(Some(&p));
        assert_eq!(Representation::<Q>::parse(&text, Some(&p)).unwrap(), a);
        assert!(matches!(
            Representation::<F5>::parse(&text, Some(&p)),
            Err(Error::FieldMismatch { .. })
        ));
        let bad = "field: Q\ndim: 2\ngen: 1 1 ; 0 1\ngen: 2 0 ; 0 1\n";
        assert!(matches!(
            Representation::<Q>::parse(bad, Some(&p)),
            Err(Error::RelatorViolation { index: 0, .. })
        ));
        let singular = "field: Q\ndim: 1\ngen: 0\n";
        assert_eq!(Representation::<Q>::parse(singular, None).unwrap_err(), Error::Singular);
        let qi = "field: Qi\ndim: 1\ngen: i\n";
        let r = Representation::<GaussRational>::parse(qi, None).unwrap();
        assert_eq!(r.dual().image(0)[(0, 0)], GaussRational::i());
    }
}
