//! Finitely presented groups, Fox calculus and twisted chain complexes of
//! presentation 2-complexes.

mod abelian;
mod calculus;
mod table;

pub use abelian::{abelianization, integer_smith, AbelianizationMap, IntegerSmith};
pub use calculus::{
    fox_derivative_eval, fox_gradient, fox_jacobian, presentation_complex, MatrixImages,
};
pub use table::{knot_table, TABLE_NAMES};

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Word from signed 1-based indices: `3` is `x_3`, `-3` its inverse.
    pub fn from_signed(indices: &[i64]) -> Self {
        Word::new(indices.iter().map(|&i| {
            assert!(i != 0, "generator indices are 1-based");
            Letter::new(i.unsigned_abs() as usize - 1, i < 0)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, o: &Word) -> Self {
        Word::new(self.0.iter().chain(o.0.iter()).copied())
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.gen] += l.exponent();
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Space separated letters; inverses are upper-cased names.
    pub fn format(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|l| {
                let n = &names[l.gen];
                if l.inverse {
                    n.to_uppercase()
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse a word over the given lower-case generator names. Tokens are
    /// separated by whitespace; a token that is not a name is split into
    /// single characters. Upper case denotes the inverse.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let lookup = |tok: &str| -> Option<Letter> {
            if let Some(i) = names.iter().position(|n| n == tok) {
                return Some(Letter::new(i, false));
            }
            let lower = tok.to_lowercase();
            if tok != lower && tok.to_uppercase() == tok {
                if let Some(i) = names.iter().position(|n| *n == lower) {
                    return Some(Letter::new(i, true));
                }
            }
            None
        };
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            if let Some(l) = lookup(tok) {
                letters.push(l);
                continue;
            }
            for ch in tok.chars() {
                let c = ch.to_string();
                letters.push(lookup(&c).ok_or_else(|| Error::UnknownGenerator(tok.to_string()))?);
            }
        }
        Ok(Word::new(letters))
    }
}

/// A group presentation with optional topological metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    pub name: Option<String>,
    /// Number of boundary components `b_0(∂N)`.
    pub boundary_components: Option<usize>,
    /// Thurston norm `x(φ)` of the abelianization class.
    pub thurston_norm: Option<i64>,
    /// One meridian generator per link component.
    pub meridians: Option<Vec<usize>>,
    /// Symmetric linking matrix of the components (diagonal ignored).
    pub linking: Option<Vec<Vec<i64>>>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && s.starts_with(|c: char| c.is_ascii_lowercase())
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::Parse(format!("invalid generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Parse(format!("duplicate generator `{g}`")));
            }
        }
        let n = generators.len();
        for r in &relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= n) {
                return Err(Error::GeneratorOutOfRange { index: g, count: n });
            }
        }
        let relators = relators.into_iter().map(|r| Word::new(r.0)).collect();
        Ok(GroupPresentation {
            generators,
            relators,
            name: None,
            boundary_components: None,
            thurston_norm: None,
            meridians: None,
            linking: None,
        })
    }

    /// Presentation on generators named `a, b, c, ...`.
    pub fn from_words(n: usize, relators: &[&str]) -> Result<Self> {
        if n > 26 {
            return Err(Error::Unsupported("more than 26 unnamed generators".into()));
        }
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        GroupPresentation::new(names, rels)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator_text(&self, i: usize) -> String {
        self.relators[i].format(&self.generators)
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn require_deficiency_one(&self) -> Result<()> {
        if self.deficiency() == 1 {
            Ok(())
        } else {
            Err(Error::NotDeficiencyOne {
                generators: self.generators.len(),
                relators: self.relators.len(),
            })
        }
    }

    /// `b_0(∂N)`, defaulting to one boundary torus.
    pub fn b0(&self) -> usize {
        self.boundary_components.unwrap_or(1)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parse the line-oriented text format:
    ///
    /// ```text
    /// name: trefoil
    /// gens: a b
    /// rel: a b a B A B
    /// b0: 1
    /// thurston: 1
    /// meridians: a
    /// lk: 0 1 1
    /// ```
    ///
    /// `lk:` takes `i j value` with 0-based component indices, or a single
    /// value for two-component links. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels: Vec<String> = Vec::new();
        let mut name = None;
        let mut b0 = None;
        let mut thurston = None;
        let mut meridians: Option<Vec<String>> = None;
        let mut lk: Vec<Vec<i64>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key: value`", lineno + 1)))?;
            let value = value.trim();
            let int = |s: &str| -> Result<i64> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer `{s}`", lineno + 1)))
            };
            match key.trim() {
                "gens" => gens = Some(value.split_whitespace().map(str::to_string).collect()),
                "rel" => rels.push(value.to_string()),
                "name" => name = Some(value.to_string()),
                "b0" => b0 = Some(int(value)? as usize),
                "thurston" => thurston = Some(int(value)?),
                "meridians" => meridians = Some(value.split_whitespace().map(str::to_string).collect()),
                "lk" => lk.push(value.split_whitespace().map(int).collect::<Result<_>>()?),
                other => {
                    return Err(Error::Parse(format!("line {}: unknown key `{other}`", lineno + 1)))
                }
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing `gens:` line".into()))?;
        let words = rels
            .iter()
            .map(|r| Word::parse(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        let mut p = GroupPresentation::new(gens, words)?;
        p.name = name;
        p.boundary_components = b0;
        p.thurston_norm = thurston;
        if let Some(m) = meridians {
            p.meridians = Some(m.iter().map(|g| p.generator_index(g)).collect::<Result<_>>()?);
        }
        if !lk.is_empty() {
            let c = p
                .meridians
                .as_ref()
                .map(Vec::len)
                .or(b0)
                .ok_or_else(|| Error::Parse("`lk:` needs `meridians:` or `b0:`".into()))?;
            let mut m = vec![vec![0i64; c]; c];
            for entry in lk {
                let (i, j, v) = match entry.as_slice() {
                    [v] if c == 2 => (0, 1, *v),
                    [i, j, v] => (*i as usize, *j as usize, *v),
                    _ => return Err(Error::Parse("`lk:` expects `i j value`".into())),
                };
                if i >= c || j >= c || i == j {
                    return Err(Error::Parse(format!("`lk:` component indices {i} {j} out of range")));
                }
                m[i][j] = v;
                m[j][i] = v;
            }
            p.linking = Some(m);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s += &format!("name: {n}\n");
        }
        s += &format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            s += &format!("rel: {}\n", r.format(&self.generators));
        }
        if let Some(b) = self.boundary_components {
            s += &format!("b0: {b}\n");
        }
        if let Some(x) = self.thurston_norm {
            s += &format!("thurston: {x}\n");
        }
        if let Some(m) = &self.meridians {
            let names: Vec<&str> = m.iter().map(|&i| self.generators[i].as_str()).collect();
            s += &format!("meridians: {}\n", names.join(" "));
        }
        if let Some(lk) = &self.linking {
            for i in 0..lk.len() {
                for j in i + 1..lk.len() {
                    s += &format!("lk: {i} {j} {}\n", lk[i][j]);
                }
            }
        }
        s
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.format(&self.generators)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_freely_reduced() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]);
        assert_eq!(w, Word::from_signed(&[3]));
        assert!(Word::from_signed(&[1, -1]).is_empty());
        let u = Word::from_signed(&[1, 2]);
        assert!(u.concat(&u.inverse()).is_empty());
        assert_eq!(Word::from_signed(&[1, 2, -1, 2]).exponent_sums(2), vec![0, 2]);
    }

    #[test]
    fn parse_words() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(Word::parse("a b A", &names).unwrap(), Word::from_signed(&[1, 2, -1]));
        assert_eq!(Word::parse("abaBAB", &names).unwrap(), Word::from_signed(&[1, 2, 1, -2, -1, -2]));
        assert_eq!(Word::parse("1", &names).unwrap(), Word::identity());
        assert!(matches!(Word::parse("a c", &names), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn presentation_text_round_trip() {
        let text = "name: hopf\ngens: a b\nrel: a b A B\nb0: 2\nthurston: 0\nmeridians: a b\nlk: 0 1 1\n";
        let p = GroupPresentation::parse(text).unwrap();
        assert_eq!(p.to_text(), text);
        assert_eq!(p.linking, Some(vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(p.deficiency(), 1);
        let q = GroupPresentation::parse("gens: a b\nmeridians: a b\nlk: 3").unwrap();
        assert_eq!(q.linking, Some(vec![vec![0, 3], vec![3, 0]]));
    }

    #[test]
    fn parse_errors_name_the_problem() {
        assert!(matches!(GroupPresentation::parse("rel: a"), Err(Error::Parse(_))));
        assert!(matches!(
            GroupPresentation::parse("gens: a\nrel: a x"),
            Err(Error::UnknownGenerator(s)) if s == "x"
        ));
        assert!(matches!(GroupPresentation::parse("gens: a\nfoo: 1"), Err(Error::Parse(_))));
        assert!(matches!(GroupPresentation::parse("gens: a a"), Err(Error::Parse(_))));
        assert!(matches!(
            GroupPresentation::new(vec!["a".into()], vec![Word::from_signed(&[2])]),
            Err(Error::GeneratorOutOfRange { index: 1, count: 1 })
        ));
    }
}
