use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::field::{Ring, ScalarField};
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial. Trailing zeros are trimmed so that
/// equal monomials have equal representations whatever the ambient rank.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[i32; 2]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn new(exps: &[i32]) -> Self {
        let mut v: SmallVec<[i32; 2]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(i: usize, e: i32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::new(&v)
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of stored coordinates; variables past this have exponent 0.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent vector padded to `rank` entries.
    pub fn exponents(&self, rank: usize) -> Vec<i32> {
        (0..rank.max(self.0.len())).map(|i| self.exp(i)).collect()
    }

    fn zip_with(&self, o: &Monomial, f: impl Fn(i32, i32) -> Option<i32>) -> Monomial {
        let n = self.0.len().max(o.0.len());
        let v: Vec<i32> = (0..n)
            .map(|i| f(self.exp(i), o.exp(i)).expect("exponent overflow"))
            .collect();
        Monomial::new(&v)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        self.zip_with(o, i32::checked_add)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.zip_with(o, i32::checked_sub)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|e| e.checked_neg().expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    fn fmt_with_rank(&self, rank: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if rank <= 1 && i == 0 {
                write!(f, "t")?;
            } else {
                write!(f, "t{}", i + 1)?;
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let n = self.0.len().max(o.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&o.exp(i)) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse Laurent polynomial in `rank` commuting variables over `K`.
#[derive(Clone)]
pub struct LaurentPoly<K: ScalarField> {
    terms: BTreeMap<Monomial, K>,
    rank: usize,
}

impl<K: ScalarField> PartialEq for LaurentPoly<K> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<K: ScalarField> Eq for LaurentPoly<K> {}

impl<K: ScalarField> LaurentPoly<K> {
    pub fn zero_with_rank(rank: usize) -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            rank,
        }
    }

    pub fn constant(c: K, rank: usize) -> Self {
        Self::term(c, Monomial::one(), rank)
    }

    pub fn term(c: K, m: Monomial, rank: usize) -> Self {
        let rank = rank.max(m.support_len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms, rank }
    }

    /// `c·t^e` for an explicit exponent vector.
    pub fn monomial(c: K, exps: &[i32]) -> Self {
        Self::term(c, Monomial::new(exps), exps.len())
    }

    /// The variable `t_{i+1}` in a ring of the given rank.
    pub fn var(i: usize, rank: usize) -> Self {
        Self::term(K::one(), Monomial::var(i, 1), rank)
    }

    /// The variable `t` of the univariate ring.
    pub fn t() -> Self {
        Self::var(0, 1)
    }

    /// Univariate polynomial from coefficients of `t^low, t^(low+1), ...`.
    pub fn from_coeffs(low: i32, coeffs: &[K]) -> Self {
        let mut p = Self::zero_with_rank(1);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::new(&[low + k as i32]), c.clone());
            }
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank.max(self.support_rank());
        self
    }

    fn support_rank(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// `(c, m)` when the polynomial is the single term `c·m`.
    pub fn as_monomial(&self) -> Option<(K, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    /// `t ↦ t^{-1}` on group elements, conjugation on coefficients.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.inv(), c.conj())).collect(),
            rank: self.rank,
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero_with_rank(self.rank);
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
            rank: self.rank,
        }
    }

    pub fn shift(&self, by: &Monomial) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(by), c.clone())).collect(),
            rank: self.rank.max(by.support_len()),
        }
    }

    /// Substitute `t_i ↦ t^{w_i}` for every variable, landing in rank 1.
    pub fn specialize(&self, weights: &[i32]) -> Self {
        let mut out = Self::zero_with_rank(1);
        for (m, c) in &self.terms {
            let e: i32 = (0..m.support_len())
                .map(|i| m.exp(i) * weights.get(i).copied().unwrap_or(0))
                .sum();
            out.add_term(Monomial::new(&[e]), c.clone());
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(a) => {
                let s = a.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *a = s;
                }
            }
            None => {
                self.rank = self.rank.max(m.support_len());
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_univariate(&self) -> bool {
        self.rank <= 1 && self.support_rank() <= 1
    }

    fn require_univariate(&self) -> Result<()> {
        if self.is_univariate() {
            Ok(())
        } else {
            Err(Error::NotUnivariate(self.rank.max(self.support_rank())))
        }
    }

    /// Lowest and highest exponent of a nonzero univariate polynomial.
    pub fn span(&self) -> Result<(i32, i32)> {
        self.require_univariate()?;
        let lo = self.terms.keys().next().ok_or(Error::UndefinedDegree)?;
        let hi = self.terms.keys().next_back().unwrap();
        Ok((lo.exp(0), hi.exp(0)))
    }

    /// Highest minus lowest exponent.
    pub fn degree(&self) -> Result<i64> {
        let (lo, hi) = self.span()?;
        Ok(hi as i64 - lo as i64)
    }

    /// Coefficients from the lowest to the highest exponent.
    pub fn dense(&self) -> Result<(i32, Vec<K>)> {
        let (lo, hi) = self.span()?;
        let mut v = vec![K::zero(); (hi as i64 - lo as i64 + 1) as usize];
        for (m, c) in &self.terms {
            v[(m.exp(0) - lo) as usize] = c.clone();
        }
        Ok((lo, v))
    }

    /// Euclidean division in `K[t^{±1}]`: `self = q·d + r` with
    /// `r = 0` or `degree(r) < degree(d)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.require_univariate()?;
        let (ld, dd) = d.dense()?;
        if self.is_zero() {
            return Ok((Self::zero_with_rank(1), Self::zero_with_rank(1)));
        }
        let (la, mut a) = self.dense()?;
        let n = dd.len() - 1;
        let lead_inv = dd[n].inv().expect("leading coefficient is nonzero");
        if a.len() <= n {
            return Ok((Self::zero_with_rank(1), self.clone().with_rank(1)));
        }
        let mut q = vec![K::zero(); a.len() - n];
        for k in (0..q.len()).rev() {
            let c = a[k + n].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in dd.iter().enumerate() {
                a[k + j] = a[k + j].clone() - c.clone() * dj.clone();
            }
            q[k] = c;
        }
        let q = Self::from_coeffs(la - ld, &q);
        let r = Self::from_coeffs(la, &a[..n]);
        Ok((q, r))
    }

    /// Monic-at-the-bottom gcd in `K[t^{±1}]`; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        self.require_univariate()?;
        o.require_univariate()?;
        let mut a = self.clone().with_rank(1);
        let mut b = o.clone().with_rank(1);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        Ok(a.unit_normalize()?.0)
    }

    /// Split `self = unit·canonical` where `canonical` has lowest exponent 0
    /// and lowest coefficient 1, and `unit` is a monomial.
    pub fn unit_normalize(&self) -> Result<(Self, Self)> {
        self.require_univariate()?;
        let (m, c) = self
            .terms
            .iter()
            .next()
            .ok_or(Error::ZeroInput("unit normalization"))?;
        let cinv = c.inv().expect("nonzero coefficient");
        let canonical = self.shift(&m.inv()).scale(&cinv).with_rank(1);
        let unit = Self::term(c.clone(), m.clone(), 1);
        Ok((canonical, unit))
    }

    /// Exact quotient in the multivariate Laurent ring, if it exists.
    pub fn exact_quotient(&self, d: &Self) -> Option<Self> {
        let rank = self.rank.max(d.rank);
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero_with_rank(rank));
        }
        if d.terms.len() == 1 {
            let inv = dc.inv()?;
            return Some(self.shift(&dm.inv()).scale(&inv).with_rank(rank));
        }
        // The quotient's exponents are confined to a box determined by the
        // exponent ranges of dividend and divisor; leaving it means no exact
        // quotient exists.
        let n = self.support_rank().max(d.support_rank());
        let range = |p: &Self, k: usize| {
            let it = p.terms.keys().map(|m| m.exp(k));
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|k| {
                let (alo, ahi) = range(self, k);
                let (dlo, dhi) = range(d, k);
                (alo as i64 - dhi as i64, ahi as i64 - dlo as i64)
            })
            .collect();
        let dc_inv = dc.inv()?;
        let mut r = self.clone();
        let mut q = Self::zero_with_rank(rank);
        while let Some((rm, rc)) = r.leading() {
            let qm = rm.div(dm);
            let inside = (0..n.max(qm.support_len())).all(|k| {
                let e = qm.exp(k) as i64;
                bounds.get(k).is_some_and(|&(lo, hi)| lo <= e && e <= hi) || (k >= n && e == 0)
            });
            if !inside {
                return None;
            }
            let qc = rc.clone() * dc_inv.clone();
            let step = Self::term(qc.clone(), qm.clone(), rank);
            r = r - d.clone() * step;
            q.add_term(qm, qc);
        }
        Some(q.with_rank(rank))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(K::one(), self.rank);
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Parse text such as `3*t^2 - t + 1` or `t1^-1*t2 + (2+i)`.
    ///
    /// The rank-1 variable is `t`; in higher rank the variables are
    /// `t1, t2, ...` (a bare `t` means `t1`).
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let mut p = Self::zero_with_rank(rank);
        for term in split_terms(s)? {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b.trim()),
                None => (false, term.strip_prefix('+').unwrap_or(&term).trim()),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let mut coeff = K::one();
            let mut exps = vec![0i32; rank.max(1)];
            for factor in split_top_level(body, '*') {
                let factor = factor.trim();
                if let Some(var) = factor.strip_prefix('t') {
                    let (name, e) = match var.split_once('^') {
                        Some((n, e)) => {
                            let e: i32 = e
                                .trim()
                                .trim_start_matches('(')
                                .trim_end_matches(')')
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                            (n, e)
                        }
                        None => (var, 1),
                    };
                    let idx = if name.is_empty() {
                        0
                    } else {
                        let i: usize = name
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                        if i == 0 || i > rank {
                            return Err(Error::Parse(format!(
                                "variable `{factor}` outside rank {rank}"
                            )));
                        }
                        i - 1
                    };
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                } else {
                    let inner = factor
                        .strip_prefix('(')
                        .and_then(|f| f.strip_suffix(')'))
                        .unwrap_or(factor);
                    coeff = coeff * K::parse(inner)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(Monomial::new(&exps), coeff);
        }
        Ok(p.with_rank(rank))
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Split a polynomial into signed terms at top-level `+`/`-`, leaving
/// exponent signs (`t^-2`) and parenthesised coefficients intact.
fn split_terms(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        if c.is_whitespace() {
            continue;
        }
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
        }
        let splits = (c == '+' || c == '-')
            && depth == 0
            && !cur.is_empty()
            && !matches!(prev, Some('^') | Some('*') | Some('/'));
        if splits {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
        prev = Some(c);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    if cur.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    out.push(cur);
    if out.len() == 1 && out[0] == "0" {
        out.clear();
    }
    Ok(out)
}

impl<K: ScalarField> fmt::Display for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let compound = s.chars().skip(1).any(|ch| ch == '+' || ch == '-');
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) if !compound => (true, b.to_string()),
                _ => (false, s.clone()),
            };
            let body = if compound { format!("({body})") } else { body };
            match (k == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{body}")?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                m.fmt_with_rank(self.rank, f)?;
            }
        }
        Ok(())
    }
}

impl<K: ScalarField> fmt::Debug for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: ScalarField> Add for LaurentPoly<K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.rank = self.rank.max(o.rank);
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<K: ScalarField> Sub for LaurentPoly<K> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self.rank = self.rank.max(o.rank);
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<K: ScalarField> Mul for LaurentPoly<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero_with_rank(self.rank.max(o.rank));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<K: ScalarField> Neg for LaurentPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
            rank: self.rank,
        }
    }
}

impl<K: ScalarField> Ring for LaurentPoly<K> {
    fn zero() -> Self {
        Self::zero_with_rank(0)
    }
    fn one() -> Self {
        Self::constant(K::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_int(n: i64) -> Self {
        Self::constant(K::from_int(n), 0)
    }
    fn conj(&self) -> Self {
        self.involute()
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.exact_quotient(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRational, Rational, F5};

    type Q = LaurentPoly<Rational>;

    fn q(s: &str) -> Q {
        Q::parse(s, 1).unwrap()
    }

    #[test]
    fn involute_examples() {
        assert_eq!(q("1 + t").involute(), q("1 + t^-1"));
        let p = Q::parse("3*t1*t2^-2", 2).unwrap();
        assert_eq!(p.involute(), Q::parse("3*t1^-1*t2^2", 2).unwrap());
        let g = LaurentPoly::<GaussRational>::parse("(2+i)*t", 1).unwrap();
        assert_eq!(
            g.involute(),
            LaurentPoly::<GaussRational>::parse("(2-i)*t^-1", 1).unwrap()
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(q("t^-1 + t^3").degree().unwrap(), 4);
        assert_eq!(q("5*t^7").degree().unwrap(), 0);
        assert_eq!(q("t^2 - t + 1").degree().unwrap(), 2);
        assert_eq!(Q::zero().degree(), Err(Error::UndefinedDegree));
        assert!(matches!(
            Q::parse("t1 + t2", 2).unwrap().degree(),
            Err(Error::NotUnivariate(2))
        ));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["t^2 - t + 1", "3/2 - t^-1", "2*t^3 - 3*t^2 + 2", "0", "-1"] {
            assert_eq!(q(s).to_string(), s);
        }
        let m = Q::parse("t1^-2*t2 - 3*t2^4 + 1", 2).unwrap();
        assert_eq!(Q::parse(&m.to_string(), 2).unwrap(), m);
        let g = LaurentPoly::<GaussRational>::parse("(2+i)*t - i", 1).unwrap();
        assert_eq!(g.to_string(), "(2+i)*t - i");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Q::parse("t3", 2).is_err());
        assert!(Q::parse("(1+t", 1).is_err());
        assert!(Q::parse("x^2", 1).is_err());
        assert!(Q::parse("", 1).is_err());
    }

    #[test]
    fn unit_normalize_examples() {
        let (c, u) = q("3*t^2 - 3*t^3").unit_normalize().unwrap();
        assert_eq!(c, q("1 - t"));
        assert_eq!(u, q("3*t^2"));
        let (c, u) = q("t^-5").unit_normalize().unwrap();
        assert_eq!(c, q("1"));
        assert_eq!(u, q("t^-5"));
        let (c, u) = q("-t + 1").unit_normalize().unwrap();
        assert_eq!(c, q("1 - t"));
        assert_eq!(u, q("1"));
        assert_eq!(Q::zero().unit_normalize(), Err(Error::ZeroInput("unit normalization")));
    }

    #[test]
    fn division_and_gcd() {
        let a = q("t^4 - 1");
        let b = q("t^2 - 1");
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq, q("t^2 + 1"));
        assert!(r.is_zero());
        let g = q("t - t^-1");
        assert_eq!(g.gcd(&q("t^3 - t^2")).unwrap(), q("1 - t"));
        let p = LaurentPoly::<F5>::parse("t^2 + 1", 1).unwrap();
        let g = p.gcd(&LaurentPoly::<F5>::parse("t - 2", 1).unwrap()).unwrap();
        assert_eq!(g, LaurentPoly::<F5>::parse("1 - 3*t", 1).unwrap());
    }

    #[test]
    fn multivariate_exact_division() {
        let a = Q::parse("t1 - 1", 2).unwrap();
        let b = Q::parse("t2^-1 + t1*t2", 2).unwrap();
        let prod = a.clone() * b.clone();
        assert_eq!(prod.exact_quotient(&a).unwrap(), b);
        assert_eq!(prod.exact_quotient(&b).unwrap(), a);
        assert!(b.exact_quotient(&a).is_none());
        assert!(Q::parse("t1 + 1", 2).unwrap().exact_quotient(&a).is_none());
    }
}
