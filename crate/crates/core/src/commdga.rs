//! Free graded-commutative DG algebras over the rationals.
//!
//! Variables of even homological degree are polynomial, variables of odd
//! homological degree are exterior. A [`Monomial`] stores the even part as an
//! exponent list and the odd part as a strictly increasing variable list; the
//! sign of reordering odd letters is absorbed into the coefficient.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::lex::parse_terms;
use crate::ncpoly::GeneratorInfo;
use crate::presentation::Mode;
use crate::rational::push_term;
use crate::{Error, Result};

/// Origin of a matrix-entry variable `gen[row][col]` (1-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixVar {
    pub gen: u32,
    pub row: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommVar {
    pub name: String,
    pub hdeg: u32,
    pub weight: u32,
    pub origin: Option<MatrixVar>,
}

impl CommVar {
    pub fn new(name: impl Into<String>, hdeg: u32, weight: u32) -> Self {
        Self {
            name: name.into(),
            hdeg,
            weight,
            origin: None,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.hdeg % 2 == 1
    }
}

/// A canonical graded-commutative monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    hdeg: u32,
    weight: u32,
    even: Vec<(u32, u32)>,
    odd: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self {
            hdeg: 0,
            weight: 0,
            even: Vec::new(),
            odd: Vec::new(),
        }
    }

    pub fn var(idx: usize, v: &CommVar) -> Self {
        let mut m = Self {
            hdeg: v.hdeg,
            weight: v.weight,
            even: Vec::new(),
            odd: Vec::new(),
        };
        if v.is_odd() {
            m.odd.push(idx as u32);
        } else {
            m.even.push((idx as u32, 1));
        }
        m
    }

    pub fn hdeg(&self) -> u32 {
        self.hdeg
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.hdeg, self.weight)
    }

    /// `(variable, exponent)` pairs of the polynomial part, ascending.
    pub fn even(&self) -> &[(u32, u32)] {
        &self.even
    }

    /// Exterior part, strictly ascending.
    pub fn odd(&self) -> &[u32] {
        &self.odd
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        if self.odd.binary_search(&var).is_ok() {
            return 1;
        }
        self.even
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Variables with multiplicity, polynomial part first.
    pub fn letters(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(v, e) in &self.even {
            out.extend(std::iter::repeat(v).take(e as usize));
        }
        out.extend_from_slice(&self.odd);
        out
    }

    /// Product `self * other`; `None` if an exterior variable repeats,
    /// otherwise `(negative, product)`.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let (a, b) = (&self.odd, &other.odd);
        let mut odd = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j, mut inversions) = (0, 0, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Equal => return None,
                Ordering::Less => {
                    odd.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    odd.push(b[j]);
                    inversions += a.len() - i;
                    j += 1;
                }
            }
        }
        odd.extend_from_slice(&a[i..]);
        odd.extend_from_slice(&b[j..]);

        let (a, b) = (&self.even, &other.even);
        let mut even = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Equal => {
                    even.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    even.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    even.push(b[j]);
                    j += 1;
                }
            }
        }
        even.extend_from_slice(&a[i..]);
        even.extend_from_slice(&b[j..]);
        Some((
            inversions % 2 == 1,
            Monomial {
                hdeg: self.hdeg + other.hdeg,
                weight: self.weight + other.weight,
                even,
                odd,
            },
        ))
    }

    /// Removes one factor of an even variable.
    fn without_even(&self, pos: usize, var: &CommVar) -> Monomial {
        let mut m = self.clone();
        m.even[pos].1 -= 1;
        if m.even[pos].1 == 0 {
            m.even.remove(pos);
        }
        m.hdeg -= var.hdeg;
        m.weight -= var.weight;
        m
    }

    /// Splits around the exterior letter at `pos`: `(evens * odd[..pos], odd[pos+1..])`.
    fn split_odd(&self, pos: usize, vars: &[CommVar]) -> (Monomial, Monomial) {
        let mut left = Monomial {
            hdeg: 0,
            weight: 0,
            even: self.even.clone(),
            odd: self.odd[..pos].to_vec(),
        };
        let mut right = Monomial::one();
        right.odd = self.odd[pos + 1..].to_vec();
        for &(v, e) in &left.even {
            left.hdeg += vars[v as usize].hdeg * e;
            left.weight += vars[v as usize].weight * e;
        }
        for &v in &left.odd {
            left.hdeg += vars[v as usize].hdeg;
            left.weight += vars[v as usize].weight;
        }
        for &v in &right.odd {
            right.hdeg += vars[v as usize].hdeg;
            right.weight += vars[v as usize].weight;
        }
        (left, right)
    }
}

/// Degree-reverse-lexicographic comparison of sparse exponent lists.
fn degrevlex(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let ta: u32 = a.iter().map(|e| e.1).sum();
    let tb: u32 = b.iter().map(|e| e.1).sum();
    if ta != tb {
        return ta.cmp(&tb);
    }
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 || j > 0 {
        let va = if i > 0 { Some(a[i - 1]) } else { None };
        let vb = if j > 0 { Some(b[j - 1]) } else { None };
        let (ea, eb) = match (va, vb) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i -= 1;
                j -= 1;
                (x.1, y.1)
            }
            (Some(x), Some(y)) if x.0 > y.0 => {
                i -= 1;
                (x.1, 0)
            }
            (Some(x), None) => {
                i -= 1;
                (x.1, 0)
            }
            (_, Some(y)) => {
                j -= 1;
                (0, y.1)
            }
            (None, None) => unreachable!(),
        };
        if ea != eb {
            // smaller exponent in the last differing variable is larger
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.hdeg, self.weight)
            .cmp(&(other.hdeg, other.weight))
            .then_with(|| degrevlex(&self.even, &other.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rational combination of canonical monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CommElement {
    terms: BTreeMap<Monomial, BigRational>,
}

impl CommElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::from_monomial(Monomial::one(), c)
    }

    pub fn from_monomial(m: Monomial, c: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// The common bidegree, if every term has the same one.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Splits into bidegree-homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<(u32, u32), CommElement> {
        let mut out: BTreeMap<(u32, u32), CommElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// `left * self * right` with graded signs.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> CommElement {
        let mut out = CommElement::zero();
        for (m, c) in &self.terms {
            let Some((s1, lm)) = left.mul(m) else { continue };
            let Some((s2, p)) = lm.mul(right) else { continue };
            out.add_term(p, if s1 ^ s2 { -c.clone() } else { c.clone() });
        }
        out
    }
}

impl Add<&CommElement> for &CommElement {
    type Output = CommElement;
    fn add(self, rhs: &CommElement) -> CommElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&CommElement> for &CommElement {
    type Output = CommElement;
    fn sub(self, rhs: &CommElement) -> CommElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &CommElement {
    type Output = CommElement;
    fn neg(self) -> CommElement {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&CommElement> for &CommElement {
    type Output = CommElement;
    fn mul(self, rhs: &CommElement) -> CommElement {
        let mut out = CommElement::zero();
        for (a, c) in &self.terms {
            for (b, e) in &rhs.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let v = c * e;
                    out.add_term(m, if neg { -v } else { v });
                }
            }
        }
        out
    }
}

/// Canonical form of a list of written products `(coefficient, letters in order)`.
pub fn normalize(vars: &[CommVar], raw: &[(BigRational, Vec<usize>)]) -> CommElement {
    let mut out = CommElement::zero();
    'term: for (c, letters) in raw {
        let mut m = Monomial::one();
        let mut neg = false;
        for &l in letters {
            match m.mul(&Monomial::var(l, &vars[l])) {
                Some((s, p)) => {
                    neg ^= s;
                    m = p;
                }
                None => continue 'term,
            }
        }
        out.add_term(m, if neg { -c.clone() } else { c.clone() });
    }
    out
}

/// Matrix metadata of an algebra produced by matrixification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixInfo {
    pub n: usize,
    pub gens: Vec<GeneratorInfo>,
}

/// A free graded-commutative algebra on finitely many variables with a
/// differential given on variables and extended by the Leibniz rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommDgAlgebra {
    pub name: String,
    pub mode: Mode,
    vars: Vec<CommVar>,
    d: Vec<CommElement>,
    matrix: Option<MatrixInfo>,
    index: HashMap<String, usize>,
}

impl CommDgAlgebra {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<CommVar>,
        d: Vec<CommElement>,
        mode: Mode,
    ) -> Result<Self> {
        if vars.len() != d.len() {
            return Err(Error::Internal("variable/differential length mismatch".into()));
        }
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(Error::InvalidGenerators(format!(
                    "variable `{}` has weight 0",
                    v.name
                )));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::InvalidGenerators(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            mode,
            vars,
            d,
            matrix: None,
            index,
        })
    }

    pub(crate) fn with_matrix_info(mut self, info: MatrixInfo) -> Self {
        self.matrix = Some(info);
        self
    }

    pub fn vars(&self) -> &[CommVar] {
        &self.vars
    }

    pub fn matrix_info(&self) -> Option<&MatrixInfo> {
        self.matrix.as_ref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The element given by variable `i`.
    pub fn var(&self, i: usize) -> CommElement {
        CommElement::from_monomial(Monomial::var(i, &self.vars[i]), BigRational::one())
    }

    pub fn var_by_name(&self, name: &str) -> Result<CommElement> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.var(i))
    }

    /// Differential of variable `i`.
    pub fn d_var(&self, i: usize) -> &CommElement {
        &self.d[i]
    }

    pub fn max_var_hdeg(&self) -> u32 {
        self.vars.iter().map(|v| v.hdeg).max().unwrap_or(0)
    }

    pub fn apply_d(&self, e: &CommElement) -> CommElement {
        let mut out = CommElement::zero();
        for (m, c) in e.terms() {
            for (dm, dc) in self.d_monomial(m).terms {
                out.add_term(dm, c * dc);
            }
        }
        out
    }

    /// Leibniz expansion on one monomial.
    pub fn d_monomial(&self, m: &Monomial) -> CommElement {
        let mut out = CommElement::zero();
        let odd_part = Monomial {
            hdeg: m.odd.iter().map(|&v| self.vars[v as usize].hdeg).sum(),
            weight: m.odd.iter().map(|&v| self.vars[v as usize].weight).sum(),
            even: Vec::new(),
            odd: m.odd.clone(),
        };
        let even_only = Monomial {
            hdeg: m.hdeg - odd_part.hdeg,
            weight: m.weight - odd_part.weight,
            even: m.even.clone(),
            odd: Vec::new(),
        };
        for (pos, &(v, e)) in m.even.iter().enumerate() {
            let dv = &self.d[v as usize];
            if dv.is_zero() {
                continue;
            }
            let rest = even_only.without_even(pos, &self.vars[v as usize]);
            let part = dv.sandwich(&rest, &odd_part);
            let k = BigRational::from_integer(e.into());
            for (pm, pc) in part.terms {
                out.add_term(pm, pc * &k);
            }
        }
        for (pos, &v) in m.odd.iter().enumerate() {
            let dv = &self.d[v as usize];
            if dv.is_zero() {
                continue;
            }
            let (left, right) = m.split_odd(pos, &self.vars);
            let part = dv.sandwich(&left, &right);
            let negative = pos % 2 == 1;
            for (pm, pc) in part.terms {
                out.add_term(pm, if negative { -pc } else { pc });
            }
        }
        out
    }

    /// Applies the even derivation determined by `on_var` (degree-0, no signs).
    pub fn apply_even_derivation(
        &self,
        e: &CommElement,
        on_var: impl Fn(usize) -> CommElement,
    ) -> CommElement {
        let mut out = CommElement::zero();
        for (m, c) in e.terms() {
            for (pos, &(v, ex)) in m.even.iter().enumerate() {
                let img = on_var(v as usize);
                if img.is_zero() {
                    continue;
                }
                let rest = m.without_even(pos, &self.vars[v as usize]);
                let k = c * BigRational::from_integer(ex.into());
                for (pm, pc) in img.sandwich(&rest, &Monomial::one()).terms {
                    out.add_term(pm, pc * &k);
                }
            }
            for (pos, &v) in m.odd.iter().enumerate() {
                let img = on_var(v as usize);
                if img.is_zero() {
                    continue;
                }
                let (left, right) = m.split_odd(pos, &self.vars);
                for (pm, pc) in img.sandwich(&left, &right).terms {
                    out.add_term(pm, pc * c);
                }
            }
        }
        out
    }

    /// True iff `d(d(v))` vanishes for every variable.
    pub fn check_d_squared(&self) -> bool {
        self.d.iter().all(|dv| self.apply_d(dv).is_zero())
    }

    /// All canonical monomials of bidegree `(p, w)` in ascending monomial order.
    /// Fails once more than `cap` monomials would be produced.
    pub fn monomial_basis(&self, p: u32, w: u32, cap: usize) -> Result<Vec<Monomial>> {
        let mut order: Vec<usize> = (0..self.vars.len()).collect();
        // positive-degree variables first so the weight-only tail never dead-ends on hdeg
        order.sort_by_key(|&i| (self.vars[i].hdeg == 0, i));
        let mut exps = vec![0u32; self.vars.len()];
        let mut out = Vec::new();
        self.enumerate(&order, 0, p, w, &mut exps, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        order: &[usize],
        k: usize,
        rem_p: u32,
        rem_w: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
        cap: usize,
    ) -> Result<()> {
        if rem_p == 0 && rem_w == 0 {
            if out.len() >= cap {
                return Err(Error::ResourceCap {
                    what: "monomial basis".into(),
                    limit: cap,
                });
            }
            out.push(self.monomial_from_exponents(exps));
            return Ok(());
        }
        if k == order.len() {
            return Ok(());
        }
        let vi = order[k];
        let v = &self.vars[vi];
        if v.hdeg == 0 && rem_p > 0 {
            return Ok(());
        }
        let mut max_e = rem_w / v.weight;
        if v.hdeg > 0 {
            max_e = max_e.min(rem_p / v.hdeg);
        }
        if v.is_odd() {
            max_e = max_e.min(1);
        }
        for e in (0..=max_e).rev() {
            exps[vi] = e;
            self.enumerate(order, k + 1, rem_p - e * v.hdeg, rem_w - e * v.weight, exps, out, cap)?;
        }
        exps[vi] = 0;
        Ok(())
    }

    fn monomial_from_exponents(&self, exps: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = &self.vars[i];
            m.hdeg += v.hdeg * e;
            m.weight += v.weight * e;
            if v.is_odd() {
                m.odd.push(i as u32);
            } else {
                m.even.push((i as u32, e));
            }
        }
        m
    }

    /// Largest homological degree of any monomial of each weight `0..=max_weight`
    /// (`None` when the weight is not attained).
    pub fn max_hdeg_by_weight(&self, max_weight: u32) -> Vec<Option<u32>> {
        let w = max_weight as usize;
        let mut best: Vec<Option<u32>> = vec![None; w + 1];
        best[0] = Some(0);
        for v in &self.vars {
            let vw = v.weight as usize;
            if vw > w {
                continue;
            }
            if v.is_odd() {
                for x in (vw..=w).rev() {
                    if let Some(b) = best[x - vw] {
                        best[x] = Some(best[x].map_or(b + v.hdeg, |c| c.max(b + v.hdeg)));
                    }
                }
            } else {
                for x in vw..=w {
                    if let Some(b) = best[x - vw] {
                        best[x] = Some(best[x].map_or(b + v.hdeg, |c| c.max(b + v.hdeg)));
                    }
                }
            }
        }
        best
    }

    /// Parses an expression in the variable names of this algebra.
    pub fn parse(&self, text: &str) -> Result<CommElement> {
        let raw = parse_terms(text)?
            .into_iter()
            .map(|(c, letters)| {
                let idx = letters
                    .iter()
                    .map(|l| self.var_index(l).ok_or_else(|| Error::UnknownGenerator(l.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((c, idx))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(normalize(&self.vars, &raw))
    }

    pub fn monomial_string(&self, m: &Monomial) -> String {
        let names: Vec<&str> = m
            .letters()
            .into_iter()
            .map(|v| self.vars[v as usize].name.as_str())
            .collect();
        names.join("*")
    }

    pub fn display<'a>(&'a self, e: &'a CommElement) -> CommDisplay<'a> {
        CommDisplay { alg: self, elem: e }
    }

    pub fn fmt_element(&self, e: &CommElement) -> String {
        self.display(e).to_string()
    }

    /// SHA-256 of the compact JSON form.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(&self.to_json()).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            n: self.matrix.as_ref().map(|m| m.n),
            mode: self.mode,
            variables: self
                .vars
                .iter()
                .map(|v| VariableJson {
                    name: v.name.clone(),
                    hdeg: v.hdeg,
                    weight: v.weight,
                    gen: v.origin.and_then(|o| {
                        self.matrix.as_ref().map(|mi| mi.gens[o.gen as usize].name.clone())
                    }),
                    row: v.origin.map(|o| o.row),
                    col: v.origin.map(|o| o.col),
                })
                .collect(),
            differential: self
                .vars
                .iter()
                .zip(&self.d)
                .filter(|(_, d)| !d.is_zero())
                .map(|(v, d)| (v.name.clone(), self.fmt_element(d)))
                .collect(),
        }
    }
}

pub struct CommDisplay<'a> {
    alg: &'a CommDgAlgebra,
    elem: &'a CommElement,
}

impl fmt::Display for CommDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (m, c) in self.elem.terms() {
            push_term(&mut out, c, &self.alg.monomial_string(m));
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    pub name: String,
    pub hdeg: u32,
    pub weight: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gen: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub row: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub col: Option<u32>,
}

/// On-disk schema of a commutative DG algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub mode: Mode,
    pub variables: Vec<VariableJson>,
    pub differential: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    /// x even (hdeg 0), xi and eta odd (hdeg 1), s even (hdeg 2).
    fn toy() -> CommDgAlgebra {
        let vars = vec![
            CommVar::new("x", 0, 1),
            CommVar::new("xi", 1, 2),
            CommVar::new("eta", 1, 2),
            CommVar::new("s", 2, 3),
        ];
        let z = CommElement::zero();
        CommDgAlgebra::new("toy", vars, vec![z.clone(), z.clone(), z.clone(), z], Mode::Graded)
            .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let a = toy();
        assert!(a.parse("xi*x - x*xi").unwrap().is_zero());
        assert!(a.parse("xi*eta + eta*xi").unwrap().is_zero());
        assert!(a.parse("xi*xi").unwrap().is_zero());
        assert_eq!(a.parse("eta*xi").unwrap(), a.parse("-xi*eta").unwrap());
        assert_eq!(a.parse("s*xi*x").unwrap(), a.parse("x*xi*s").unwrap());
    }

    #[test]
    fn normalize_is_idempotent_and_prints_canonically() {
        let a = toy();
        let e = a.parse("eta*x*xi + 2*x*x - 1/3").unwrap();
        let s = a.fmt_element(&e);
        assert_eq!(a.parse(&s).unwrap(), e);
        assert_eq!(s, "-1/3 + 2*x*x - x*xi*eta");
    }

    #[test]
    fn basis_of_degree_zero_weight_zero() {
        let a = toy();
        let b = a.monomial_basis(0, 0, 10).unwrap();
        assert_eq!(b, vec![Monomial::one()]);
    }

    #[test]
    fn basis_respects_exterior_square_zero() {
        let a = toy();
        // weight 4, hdeg 2: xi*eta, s*x
        let b = a.monomial_basis(2, 4, 100).unwrap();
        assert_eq!(b.len(), 2);
        assert!(matches!(a.monomial_basis(2, 4, 1), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn max_hdeg_knapsack() {
        let a = toy();
        let m = a.max_hdeg_by_weight(6);
        assert_eq!(m[0], Some(0));
        assert_eq!(m[1], Some(0));
        assert_eq!(m[4], Some(2));
        // xi*eta*x*x or s*s: both hdeg 2 at weight 6; xi*eta + x*x -> 2, s*s -> 4
        assert_eq!(m[6], Some(4));
    }

    #[test]
    fn monomial_order_is_total_and_graded_first() {
        let a = toy();
        let x = Monomial::var(0, &a.vars()[0]);
        let xi = Monomial::var(1, &a.vars()[1]);
        assert!(x < xi);
        assert!(Monomial::one() < x);
        let (_, xx) = x.mul(&x).unwrap();
        assert!(xx > x);
    }

    #[test]
    fn product_signs() {
        let a = toy();
        let xi = a.var(1);
        let eta = a.var(2);
        let p = &eta * &xi;
        assert_eq!(p, a.parse("-xi*eta").unwrap());
        assert_eq!(a.parse("xi*eta").unwrap().coeff(p.terms().next().unwrap().0), int(1));
    }
}
