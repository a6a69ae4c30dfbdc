//! Noncommutative polynomials over the rationals.
//!
//! Words are sequences of generator indices into a [`GeneratorSet`]; the empty
//! word is the unit. Each generator carries a homological degree and a
//! positive polynomial weight, and a word's bidegree is the sum over letters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lex::parse_terms;
use crate::rational::push_term;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub hdeg: u32,
    pub weight: u32,
}

impl GeneratorInfo {
    pub fn new(name: impl Into<String>, hdeg: u32, weight: u32) -> Self {
        Self {
            name: name.into(),
            hdeg,
            weight,
        }
    }
}

/// An ordered alphabet of generators with unique names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    infos: Vec<GeneratorInfo>,
    index: HashMap<String, u32>,
}

impl GeneratorSet {
    pub fn new(infos: Vec<GeneratorInfo>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in infos.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidGenerators(format!(
                    "`{}` is not an identifier",
                    g.name
                )));
            }
            if g.weight == 0 {
                return Err(Error::InvalidGenerators(format!(
                    "generator `{}` has weight 0; weights must be >= 1",
                    g.name
                )));
            }
            if index.insert(g.name.clone(), i as u32).is_some() {
                return Err(Error::InvalidGenerators(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        Ok(Self { infos, index })
    }

    pub fn len(&self) -> usize {
        self.infos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.infos.is_empty()
    }

    pub fn get(&self, i: u32) -> &GeneratorInfo {
        &self.infos[i as usize]
    }

    pub fn infos(&self) -> &[GeneratorInfo] {
        &self.infos
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn word_hdeg(&self, w: &[u32]) -> u32 {
        w.iter().map(|&g| self.get(g).hdeg).sum()
    }

    pub fn word_weight(&self, w: &[u32]) -> u32 {
        w.iter().map(|&g| self.get(g).weight).sum()
    }

    pub fn word_string(&self, w: &[u32]) -> String {
        let names: Vec<&str> = w.iter().map(|&g| self.get(g).name.as_str()).collect();
        names.join("*")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type Word = Vec<u32>;

/// A finite rational combination of words. No zero coefficients are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn letter(g: u32) -> Self {
        Self::monomial(BigRational::one(), vec![g])
    }

    pub fn monomial(c: BigRational, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u32]) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Relabels letters through `map`; `None` drops the term.
    pub fn remap(&self, map: impl Fn(u32) -> Option<u32>) -> Option<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let nw: Option<Word> = w.iter().map(|&g| map(g)).collect();
            out.add_term(nw?, c.clone());
        }
        Some(out)
    }

    /// Terms in printing order: (hdeg, weight, lexicographic word).
    pub fn sorted_terms<'a>(&'a self, gens: &GeneratorSet) -> Vec<(&'a Word, &'a BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| (gens.word_hdeg(w), gens.word_weight(w), (*w).clone()));
        v
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> NcDisplay<'a> {
        NcDisplay { poly: self, gens }
    }

    pub fn to_string_with(&self, gens: &GeneratorSet) -> String {
        self.display(gens).to_string()
    }
}

pub struct NcDisplay<'a> {
    poly: &'a NcPoly,
    gens: &'a GeneratorSet,
}

impl fmt::Display for NcDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (w, c) in self.poly.sorted_terms(self.gens) {
            push_term(&mut out, c, &self.gens.word_string(w));
        }
        f.write_str(&out)
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        nc_mul(self, rhs)
    }
}

/// Parses an expression against `gens`.
pub fn parse_nc(text: &str, gens: &GeneratorSet) -> Result<NcPoly> {
    let mut p = NcPoly::zero();
    for (c, letters) in parse_terms(text)? {
        let w = letters
            .iter()
            .map(|l| gens.lookup(l).ok_or_else(|| Error::UnknownGenerator(l.clone())))
            .collect::<Result<Word>>()?;
        p.add_term(w, c);
    }
    Ok(p)
}

/// Product in the free algebra: bilinear word concatenation.
pub fn nc_mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (u, c) in &a.terms {
        for (v, e) in &b.terms {
            let mut w = Vec::with_capacity(u.len() + v.len());
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.add_term(w, c * e);
        }
    }
    out
}

/// Extends the generator rules to a degree -1 derivation with the Koszul sign:
/// `d(uv) = d(u) v + (-1)^{|u|} u d(v)`.
pub fn nc_diff<'a>(
    p: &NcPoly,
    rule: impl Fn(u32) -> Option<&'a NcPoly>,
    hdeg: impl Fn(u32) -> u32,
    name: impl Fn(u32) -> String,
) -> Result<NcPoly> {
    let mut out = NcPoly::zero();
    for (w, c) in &p.terms {
        let mut prefix_deg = 0u32;
        for (i, &g) in w.iter().enumerate() {
            let dg = rule(g).ok_or_else(|| Error::MissingRule(name(g)))?;
            let sign = if prefix_deg % 2 == 0 { c.clone() } else { -c.clone() };
            for (v, e) in &dg.terms {
                let mut nw = Vec::with_capacity(w.len() + v.len());
                nw.extend_from_slice(&w[..i]);
                nw.extend_from_slice(v);
                nw.extend_from_slice(&w[i + 1..]);
                out.add_term(nw, &sign * e);
            }
            prefix_deg += hdeg(g);
        }
    }
    Ok(out)
}
