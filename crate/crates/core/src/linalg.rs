//! Sparse exact linear algebra over the rationals.
//!
//! Rank uses fraction-free row elimination on integer rows (each row scaled to
//! a primitive integer vector, pivots taken at the leading column, rows
//! processed in input order). Kernels and solves go through an incremental
//! reduced row echelon form over `BigRational`. A multi-modular rank with an
//! agreement vote is available as an accelerator.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, BigRational)>;

/// Word-size primes used for modular rank.
pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    /// Fraction-free elimination over the integers.
    #[default]
    Exact,
    /// Rank modulo several primes; exact fallback unless all primes agree.
    Modular,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: &[SparseVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].push((*j, v.clone()));
        }
        rows
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.row_vectors())
    }

    pub fn rank_with(&self, arith: Arithmetic) -> usize {
        rank(&self.row_vectors(), arith)
    }

    /// Exact rank and a basis of `{x : M x = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<SparseVec>) {
        let rref = ReducedBasis::from_rows(&self.row_vectors());
        (rref.rank(), rref.kernel(self.cols))
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let mut rows = self.row_vectors();
        for (r, bi) in rows.iter_mut().zip(b) {
            if !bi.is_zero() {
                r.push((self.cols, bi.clone()));
            }
        }
        let rref = ReducedBasis::from_rows(&rows);
        if rref.pivot_cols().any(|c| c == self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for r in &rref.rows {
            let p = r[0].0;
            if let Some((_, v)) = r.iter().find(|(c, _)| *c == self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); self.rows];
        for ((i, j), v) in &self.entries {
            y[*i] += v * &x[*j];
        }
        y
    }
}

pub fn rank(rows: &[SparseVec], arith: Arithmetic) -> usize {
    match arith {
        Arithmetic::Exact => rank_exact(rows),
        Arithmetic::Modular => rank_modular(rows, &PRIMES).unwrap_or_else(|| rank_exact(rows)),
    }
}

pub fn rank_exact(rows: &[SparseVec]) -> usize {
    let mut ech = IntEchelon::default();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Rank modulo each usable prime; `Some` only when every usable prime agrees.
pub fn rank_modular(rows: &[SparseVec], primes: &[u64]) -> Option<usize> {
    let mut ranks = Vec::new();
    for &p in primes {
        if let Some(r) = rank_mod_p(rows, p) {
            ranks.push(r);
        }
    }
    let first = *ranks.first()?;
    ranks.iter().all(|&r| r == first).then_some(first)
}

/// Rank modulo `p`; `None` if some denominator vanishes mod `p`.
pub fn rank_mod_p(rows: &[SparseVec], p: u64) -> Option<usize> {
    let pb = BigInt::from(p);
    let to_mod = |q: &BigRational| -> Option<u64> {
        let n = q.numer().mod_floor(&pb).to_u64()?;
        let d = q.denom().mod_floor(&pb).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(mul_mod(n, inv_mod(d, p), p))
    };
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for r in rows {
        let mut v: Vec<(usize, u64)> = Vec::with_capacity(r.len());
        for (c, q) in r {
            let x = to_mod(q)?;
            if x != 0 {
                v.push((*c, x));
            }
        }
        loop {
            let Some(&(lead, a)) = v.first() else { break };
            match pivots.get(&lead) {
                Some(prow) => {
                    // prow has leading coefficient 1
                    v = axpy_mod(&v, prow, p - a, p);
                }
                None => {
                    let inv = inv_mod(a, p);
                    for e in v.iter_mut() {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p prime
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// `x + k*y` mod p.
fn axpy_mod(x: &[(usize, u64)], y: &[(usize, u64)], k: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |e| e.0);
        let cj = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci == cj {
            let v = (x[i].1 + mul_mod(k, y[j].1, p)) % p;
            i += 1;
            j += 1;
            (ci, v)
        } else if ci < cj {
            i += 1;
            (ci, x[i - 1].1)
        } else {
            j += 1;
            (cj, mul_mod(k, y[j - 1].1, p))
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

type IntRow = Vec<(usize, BigInt)>;

/// Row echelon form over the integers, built by fraction-free elimination.
#[derive(Debug, Default, Clone)]
pub struct IntEchelon {
    pivots: HashMap<usize, IntRow>,
}

impl IntEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, r: &SparseVec) -> bool {
        let mut v = primitive(integer_row(r));
        loop {
            let Some((lead, a)) = v.first().cloned() else { return false };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let b = &prow[0].1;
                    let g = a.gcd(b);
                    let (fa, fb) = (&a / &g, b / &g);
                    v = primitive(combine(&v, &fb, prow, &-fa));
                }
                None => {
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

fn integer_row(r: &SparseVec) -> IntRow {
    let l = r
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    r.iter()
        .map(|(c, q)| (*c, q.numer() * (&l / q.denom())))
        .collect()
}

fn primitive(mut v: IntRow) -> IntRow {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        for e in v.iter_mut() {
            e.1 = -&e.1;
        }
    }
    v
}

/// `a*x + b*y`.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |e| e.0);
        let cj = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci == cj {
            let v = a * &x[i].1 + b * &y[j].1;
            i += 1;
            j += 1;
            (ci, v)
        } else if ci < cj {
            i += 1;
            (ci, a * &x[i - 1].1)
        } else {
            j += 1;
            (cj, b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// `x + k*y` over the rationals.
pub fn axpy(x: &SparseVec, k: &BigRational, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |e| e.0);
        let cj = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci == cj {
            let v = &x[i].1 + k * &y[j].1;
            i += 1;
            j += 1;
            (ci, v)
        } else if ci < cj {
            i += 1;
            (ci, x[i - 1].1.clone())
        } else {
            j += 1;
            (cj, k * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Incremental reduced row echelon form: every stored row has leading
/// coefficient 1 and zeros in every other pivot column.
#[derive(Debug, Default, Clone)]
pub struct ReducedBasis {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl ReducedBasis {
    pub fn from_rows(rows: &[SparseVec]) -> Self {
        let mut b = Self::default();
        for r in rows {
            b.insert(r.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        // pivot rows vanish in every other pivot column, so one pass suffices
        let mut out = v.clone();
        for (c, a) in v {
            if let Some(&ri) = self.pivot_of.get(c) {
                out = axpy(&out, &-a.clone(), &self.rows[ri]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some((lead, a)) = r.first().cloned() else { return false };
        let inv = a.recip();
        for e in r.iter_mut() {
            e.1 = &e.1 * &inv;
        }
        for row in self.rows.iter_mut() {
            if let Some((_, x)) = row.iter().find(|(c, _)| *c == lead) {
                let k = -x.clone();
                *row = axpy(row, &k, &r);
            }
        }
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Basis of the null space of the stored rows, as vectors of length `ncols`.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..ncols {
            if self.pivot_of.contains_key(&f) {
                continue;
            }
            let mut v: SparseVec = vec![(f, BigRational::one())];
            for r in &self.rows {
                if let Some((_, x)) = r.iter().find(|(c, _)| *c == f) {
                    v.push((r[0].0, -x.clone()));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Echelon rows tracked by the combination of labelled inputs that produced
/// them: row `k` equals `sum_l combo_k[l] * input_l`. A row's pivot is its
/// first entry; rows are not back-reduced.
#[derive(Debug, Default, Clone)]
pub struct TrackedEchelon {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot_of: HashMap<usize, usize>,
}

impl TrackedEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`. If `v = e + sum_l combo_l input_l` then the result `(r, c)`
    /// satisfies `r = e + sum_l c_l input_l`.
    pub fn reduce(&self, v: &SparseVec, combo: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut c = combo.clone();
        let mut from = 0usize;
        loop {
            let Some((col, a)) = v.iter().find(|(col, _)| *col >= from && self.pivot_of.contains_key(col)).cloned()
            else {
                return (v, c);
            };
            let (row, rc) = &self.rows[self.pivot_of[&col]];
            let k = -(a / &row[0].1);
            v = axpy(&v, &k, row);
            c = axpy(&c, &k, rc);
            from = col + 1;
        }
    }

    /// Inserts input `v` carrying label combination `combo`. Returns `None` when
    /// `v` enlarged the span, otherwise a relation `c` with `sum_l c_l input_l = 0`.
    pub fn insert(&mut self, v: &SparseVec, combo: SparseVec) -> Option<SparseVec> {
        let (r, c) = self.reduce(v, &combo);
        if r.is_empty() {
            return Some(c);
        }
        self.pivot_of.insert(r[0].0, self.rows.len());
        self.rows.push((r, c));
        None
    }
}
