use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Freely reduced word. Letter `k > 0` is generator `k−1`, `k < 0` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    pub fn generator_inv(g: usize) -> Self {
        Word(vec![-(g as i32 + 1)])
    }

    /// Builds a word from raw letters and freely reduces it.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Exponent sum per generator.
    pub fn abelianize(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Replaces every generator by a word (a homomorphism of free groups).
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::from_letters(self.0.iter().flat_map(|&l| {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                w.0.clone()
            } else {
                w.inverse().0
            }
        }))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Whitespace-separated tokens `name` or `name^k`; `1` or the empty string is the identity.
    pub fn parse(s: &str, names: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Malformed(format!("bad exponent in '{tok}'")))?,
                ),
                None => (tok, 1),
            };
            let g = names
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Malformed(format!("unknown generator '{name}'")))?;
            let l = g as i32 + 1;
            for _ in 0..exp.unsigned_abs() {
                letters.push(if exp < 0 { -l } else { l });
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Inverse of [`Word::parse`], collapsing runs into powers.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * l.signum() as i64;
            let name = &names[l.unsigned_abs() as usize - 1];
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }
}

/// Element of ℤ[F] for the free group F; words are kept freely reduced but never
/// reduced modulo relators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Word::identity())
    }

    pub fn monomial(c: i64, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(c, w);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Word)>) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(c, w);
        }
        e
    }

    pub fn add_term(&mut self, c: i64, w: Word) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in o.terms() {
            r.add_term(c, w.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (-c, w.clone())))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                r.add_term(x * y, a.mul(b));
            }
        }
        r
    }

    /// `w · self · v`.
    pub fn conjugate_by(&self, left: &Word, right: &Word) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (c, left.mul(w).mul(right))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (c, f(w))))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_generator).max()
    }

    /// Augmentation `Σ c_w`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Terms `c*word` joined by ` + `; `0` for the zero element.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(w, c)| format!("{c}*{}", w.format(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the output of [`GroupRingElement::format`].
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut e = Self::zero();
        for part in s.split(" + ") {
            let (c, w) = part
                .split_once('*')
                .ok_or_else(|| Error::Malformed(format!("expected 'c*word' in '{part}'")))?;
            let c: i64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad coefficient in '{part}'")))?;
            e.add_term(c, Word::parse(w, names)?);
        }
        Ok(e)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn free_reduction_and_parse() {
        let w = Word::parse("x y y^-1 x^-1 x", &names()).unwrap();
        assert_eq!(w, Word::generator(0));
        let c = Word::parse("x y x^-1 y^-1", &names()).unwrap();
        assert_eq!(c.format(&names()), "x y x^-1 y^-1");
        assert_eq!(c.mul(&c.inverse()), Word::identity());
        assert_eq!(c.abelianize(2), vec![0, 0]);
        assert_eq!(Word::parse("x^3", &names()).unwrap().format(&names()), "x^3");
        assert!(Word::parse("z", &names()).is_err());
    }

    #[test]
    fn ring_arithmetic() {
        let n = names();
        let x = Word::generator(0);
        let a = GroupRingElement::from_terms([(1, x.clone()), (-1, Word::identity())]);
        let b = GroupRingElement::from_terms([(1, x.inverse()), (1, Word::identity())]);
        // (x − 1)(x⁻¹ + 1) = x − x⁻¹
        let p = a.mul(&b);
        assert_eq!(p, GroupRingElement::from_terms([(1, x.clone()), (-1, x.inverse())]));
        assert_eq!(GroupRingElement::parse(&p.format(&n), &n).unwrap(), p);
        assert!(a.sub(&a).is_zero());
    }
}
