//! Homology of bigraded commutative DG algebras.
//!
//! Graded mode splits the complex into finite blocks of fixed
//! `(hdeg, weight)`; filtered mode works on the subcomplex `F_W` of
//! monomials of weight at most `W` and reports the associated graded of the
//! weight filtration on its homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{BlockKey, BlockRecord, BlockStore};
use crate::commdga::{CommDgAlgebra, CommElement, Monomial};
use crate::linalg::{rank, rank_exact, Arithmetic, ReducedBasis, SparseVec, TrackedEchelon};
use crate::matrixify::matrixify;
use crate::ncpoly::NcPoly;
use crate::presentation::{DgPresentation, Mode};
use crate::{Error, Result};

pub const DEFAULT_MONOMIAL_CAP: usize = 250_000;

#[derive(Clone, Copy)]
pub struct BettiOptions<'a> {
    pub max_hdeg: u32,
    pub max_weight: u32,
    /// `None` uses the algebra's own mode.
    pub mode: Option<Mode>,
    pub arithmetic: Arithmetic,
    /// `None` leaves the choice to the thread pool.
    pub threads: Option<usize>,
    pub monomial_cap: usize,
    /// Filtered mode only; defaults to the largest variable weight.
    pub margin: Option<u32>,
    pub cache: Option<&'a dyn BlockStore>,
}

impl<'a> BettiOptions<'a> {
    pub fn new(max_hdeg: u32, max_weight: u32) -> Self {
        Self {
            max_hdeg,
            max_weight,
            mode: None,
            arithmetic: Arithmetic::Exact,
            threads: None,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            margin: None,
            cache: None,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn arithmetic(mut self, a: Arithmetic) -> Self {
        self.arithmetic = a;
        self
    }

    pub fn threads(mut self, t: usize) -> Self {
        self.threads = Some(t);
        self
    }

    pub fn monomial_cap(mut self, cap: usize) -> Self {
        self.monomial_cap = cap;
        self
    }

    pub fn margin(mut self, m: u32) -> Self {
        self.margin = Some(m);
        self
    }

    pub fn cache(mut self, c: &'a dyn BlockStore) -> Self {
        self.cache = Some(c);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub hdeg: u32,
    pub weight: u32,
    pub chain: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: Option<usize>,
    pub mode: Mode,
    /// Sorted by `(hdeg, weight)`.
    pub entries: Vec<BettiEntry>,
    pub max_hdeg: u32,
    pub max_weight: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<u32>,
    /// Weights whose chain column vanishes above `max_hdeg`.
    pub complete_weights: Vec<u32>,
}

impl BettiTable {
    pub fn entry(&self, p: u32, w: u32) -> Option<&BettiEntry> {
        self.entries
            .binary_search_by_key(&(p, w), |e| (e.hdeg, e.weight))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Panics outside the computed window.
    pub fn dim(&self, p: u32, w: u32) -> usize {
        self.entry(p, w).expect("bidegree inside the table").dim
    }

    /// Panics outside the computed window.
    pub fn chain(&self, p: u32, w: u32) -> usize {
        self.entry(p, w).expect("bidegree inside the table").chain
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One row per weight, one column per hdeg; cells are `dim/chain`, with a
    /// trailing `?` on entries not confirmed stable.
    pub fn render_text(&self) -> String {
        let cell = |e: &BettiEntry| {
            let mark = if e.stable == Some(false) { "?" } else { "" };
            format!("{}/{}{}", e.dim, e.chain, mark)
        };
        let mut cols: Vec<Vec<String>> = vec![vec!["w".into()]];
        for p in 0..=self.max_hdeg {
            let mut col = vec![format!("p={p}")];
            for w in 0..=self.max_weight {
                col.push(self.entry(p, w).map_or_else(|| "-".into(), cell));
            }
            cols.push(col);
        }
        for w in 0..=self.max_weight {
            cols[0].push(w.to_string());
        }
        let widths: Vec<usize> = cols.iter().map(|c| c.iter().map(String::len).max().unwrap_or(0)).collect();
        let mut out = String::new();
        let n = self.n.map_or_else(|| "-".into(), |n| n.to_string());
        let _ = writeln!(out, "n = {n}, mode = {}, cells dim/chain", self.mode);
        for r in 0..cols[0].len() {
            let line: Vec<String> = cols
                .iter()
                .zip(&widths)
                .map(|(c, &wd)| format!("{:>wd$}", c[r]))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn index_of(basis: &[Monomial]) -> HashMap<&Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn to_vec(e: &CommElement, index: &HashMap<&Monomial, usize>) -> Result<SparseVec> {
    let mut v: SparseVec = Vec::with_capacity(e.len());
    for (m, c) in e.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::Internal("term outside the target basis".into()))?;
        v.push((*i, c.clone()));
    }
    v.sort_by_key(|x| x.0);
    Ok(v)
}

fn image_rows(alg: &CommDgAlgebra, src: &[Monomial], tgt: &[Monomial]) -> Result<Vec<SparseVec>> {
    let index = index_of(tgt);
    src.iter().map(|m| to_vec(&alg.d_monomial(m), &index)).collect()
}

/// Homology table of `alg` on the window `hdeg <= max_hdeg`, `weight <= max_weight`.
pub fn betti(alg: &CommDgAlgebra, opts: &BettiOptions<'_>) -> Result<BettiTable> {
    let pool = thread_pool(opts.threads)?;
    pool.install(|| match opts.mode.unwrap_or(alg.mode) {
        Mode::Graded => {
            if alg.mode != Mode::Graded {
                return Err(Error::Inhomogeneous);
            }
            graded(alg, opts)
        }
        Mode::Filtered => filtered(alg, opts),
    })
}

fn complete_weights(alg: &CommDgAlgebra, max_hdeg: u32, max_weight: u32) -> Vec<u32> {
    alg.max_hdeg_by_weight(max_weight)
        .into_iter()
        .enumerate()
        .filter(|(_, top)| top.map_or(true, |t| t <= max_hdeg))
        .map(|(w, _)| w as u32)
        .collect()
}

fn graded(alg: &CommDgAlgebra, opts: &BettiOptions<'_>) -> Result<BettiTable> {
    let (pmax, wmax) = (opts.max_hdeg, opts.max_weight);
    let cells: Vec<(u32, u32)> = (0..=pmax + 1)
        .flat_map(|p| (0..=wmax).map(move |w| (p, w)))
        .collect();
    let bases: Vec<Vec<Monomial>> = cells
        .par_iter()
        .map(|&(p, w)| alg.monomial_basis(p, w, opts.monomial_cap))
        .collect::<Result<_>>()?;
    let at = |p: u32, w: u32| &bases[(p * (wmax + 1) + w) as usize];
    let hash = opts.cache.map(|_| alg.content_hash());
    let n = alg.matrix_info().map(|m| m.n);

    // rank of d_p leaving (p, w), for p >= 1
    let rank_cells: Vec<(u32, u32)> = cells.iter().copied().filter(|&(p, _)| p >= 1).collect();
    let ranks: Vec<usize> = rank_cells
        .par_iter()
        .map(|&(p, w)| {
            let (src, tgt) = (at(p, w), at(p - 1, w));
            if src.is_empty() || tgt.is_empty() {
                return Ok(0);
            }
            let key = hash.as_ref().map(|h| BlockKey {
                algebra: h.clone(),
                n,
                hdeg: p,
                weight: w,
                mode: Mode::Graded,
            });
            if let (Some(store), Some(key)) = (opts.cache, key.as_ref()) {
                if let Some(rec) = store.load(key) {
                    if rec.source_dim == src.len() && rec.target_dim == tgt.len() {
                        return Ok(rec.rank);
                    }
                }
            }
            let r = rank(&image_rows(alg, src, tgt)?, opts.arithmetic);
            if let (Some(store), Some(key)) = (opts.cache, key.as_ref()) {
                let rec = BlockRecord {
                    source_dim: src.len(),
                    target_dim: tgt.len(),
                    rank: r,
                };
                store.store(key, &rec)?;
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let rank_at = |p: u32, w: u32| -> usize {
        if p == 0 {
            0
        } else {
            ranks[((p - 1) * (wmax + 1) + w) as usize]
        }
    };

    let mut entries = Vec::new();
    for p in 0..=pmax {
        for w in 0..=wmax {
            let chain = at(p, w).len();
            let dim = chain - rank_at(p, w) - rank_at(p + 1, w);
            entries.push(BettiEntry {
                hdeg: p,
                weight: w,
                chain,
                dim,
                stable: None,
            });
        }
    }
    Ok(BettiTable {
        n,
        mode: Mode::Graded,
        max_hdeg: pmax,
        max_weight: wmax,
        margin: None,
        complete_weights: complete_weights(alg, pmax, wmax),
        entries,
    })
}

fn filtered(alg: &CommDgAlgebra, opts: &BettiOptions<'_>) -> Result<BettiTable> {
    let (pmax, wmax) = (opts.max_hdeg, opts.max_weight);
    let margin = opts
        .margin
        .unwrap_or_else(|| alg.vars().iter().map(|v| v.weight).max().unwrap_or(1));
    let low = filtered_dims(alg, pmax, wmax, opts.monomial_cap)?;
    let high = filtered_dims(alg, pmax, wmax + margin, opts.monomial_cap)?;
    let mut entries = Vec::new();
    for p in 0..=pmax {
        for w in 0..=wmax {
            let chain = alg.monomial_basis(p, w, opts.monomial_cap)?.len();
            let (lo, hi) = (low[p as usize][w as usize], high[p as usize][w as usize]);
            entries.push(BettiEntry {
                hdeg: p,
                weight: w,
                chain,
                dim: lo,
                stable: Some(lo == hi),
            });
        }
    }
    Ok(BettiTable {
        n: alg.matrix_info().map(|m| m.n),
        mode: Mode::Filtered,
        max_hdeg: pmax,
        max_weight: wmax,
        margin: Some(margin),
        complete_weights: complete_weights(alg, pmax, wmax),
        entries,
    })
}

/// `dims[p][w] = dim gr_w H_p(F_W)` for `p <= pmax`, `w <= wmax`.
fn filtered_dims(alg: &CommDgAlgebra, pmax: u32, wmax: u32, cap: usize) -> Result<Vec<Vec<usize>>> {
    // F_W C_p, ascending in weight
    let spaces: Vec<Vec<Monomial>> = (0..=pmax + 1)
        .into_par_iter()
        .map(|p| {
            let mut all = Vec::new();
            for w in 0..=wmax {
                all.extend(alg.monomial_basis(p, w, cap)?);
                if all.len() > cap {
                    return Err(Error::ResourceCap {
                        what: "filtered chain space".into(),
                        limit: cap,
                    });
                }
            }
            Ok(all)
        })
        .collect::<Result<_>>()?;
    (0..=pmax as usize)
        .into_par_iter()
        .map(|p| {
            let src = &spaces[p];
            let mut dims = vec![0usize; wmax as usize + 1];
            let mut span = ReducedBasis::from_rows(&image_rows(alg, &spaces[p + 1], src)?);
            // kernel vectors of d_p found in weight order span Z_p(F_w) for every w
            let mut kernel: Vec<(u32, SparseVec)> = Vec::new();
            if p == 0 {
                kernel.extend(src.iter().enumerate().map(|(i, m)| (m.weight(), vec![(i, BigRational::one())])));
            } else {
                let index = index_of(&spaces[p - 1]);
                let mut ech = TrackedEchelon::default();
                for (i, m) in src.iter().enumerate() {
                    let img = to_vec(&alg.d_monomial(m), &index)?;
                    if let Some(z) = ech.insert(&img, vec![(i, BigRational::one())]) {
                        kernel.push((m.weight(), z));
                    }
                }
            }
            for (w, z) in kernel {
                if span.insert(z) {
                    dims[w as usize] += 1;
                }
            }
            Ok(dims)
        })
        .collect()
}

/// Cycles, boundaries and a homology basis of one graded block.
#[derive(Debug, Clone)]
pub struct HomologyBlock {
    pub hdeg: u32,
    pub weight: u32,
    pub chain_basis: Vec<Monomial>,
    /// Basis of `C_{p+1,w}`, the labels of the boundary inputs.
    pub boundary_source: Vec<Monomial>,
    /// Cycles whose classes form a basis of homology, in chain coordinates.
    pub basis: Vec<SparseVec>,
    echelon: TrackedEchelon,
}

impl HomologyBlock {
    pub fn compute(alg: &CommDgAlgebra, p: u32, w: u32, cap: usize) -> Result<Self> {
        if alg.mode != Mode::Graded {
            return Err(Error::Unsupported(
                "homology classes are only available for graded algebras".into(),
            ));
        }
        let chain = alg.monomial_basis(p, w, cap)?;
        let up = alg.monomial_basis(p + 1, w, cap)?;
        let down = if p == 0 { Vec::new() } else { alg.monomial_basis(p - 1, w, cap)? };
        let mut echelon = TrackedEchelon::default();
        for (i, row) in image_rows(alg, &up, &chain)?.iter().enumerate() {
            echelon.insert(row, vec![(i, BigRational::one())]);
        }
        let mut cycles = TrackedEchelon::default();
        let mut kernel = Vec::new();
        let down_index = index_of(&down);
        for (i, m) in chain.iter().enumerate() {
            let img = to_vec(&alg.d_monomial(m), &down_index)?;
            if let Some(z) = cycles.insert(&img, vec![(i, BigRational::one())]) {
                kernel.push(z);
            }
        }
        let mut basis = Vec::new();
        for z in kernel {
            let label = up.len() + basis.len();
            if echelon.insert(&z, vec![(label, BigRational::one())]).is_none() {
                basis.push(z);
            }
        }
        Ok(Self {
            hdeg: p,
            weight: w,
            chain_basis: chain,
            boundary_source: up,
            basis,
            echelon,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, v: &SparseVec) -> CommElement {
        let mut e = CommElement::zero();
        for (i, c) in v {
            e.add_term(self.chain_basis[*i].clone(), c.clone());
        }
        e
    }

    pub fn representatives(&self) -> Vec<CommElement> {
        self.basis.iter().map(|v| self.element(v)).collect()
    }

    pub fn coords(&self, e: &CommElement) -> Result<SparseVec> {
        to_vec(e, &index_of(&self.chain_basis))
    }

    /// Writes a cycle as `d(witness) + sum coords_h basis_h`.
    fn decompose(&self, v: &SparseVec) -> Result<(Vec<BigRational>, CommElement)> {
        let (residual, c) = self.echelon.reduce(v, &Vec::new());
        if !residual.is_empty() {
            return Err(Error::Internal("cycle outside boundaries plus homology basis".into()));
        }
        let off = self.boundary_source.len();
        let mut coords = vec![BigRational::zero(); self.basis.len()];
        let mut witness = CommElement::zero();
        for (l, x) in c {
            if l < off {
                witness.add_term(self.boundary_source[l].clone(), -x);
            } else {
                coords[l - off] = -x;
            }
        }
        Ok((coords, witness))
    }

    /// Dimension of the span of the classes of `elems` (cycles in this block).
    pub fn span_dim(&self, elems: &[CommElement]) -> Result<usize> {
        let mut span = ReducedBasis::default();
        for e in elems {
            let (coords, _) = self.decompose(&self.coords(e)?)?;
            let v: SparseVec = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            span.insert(v);
        }
        Ok(span.rank())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyClass {
    pub hdeg: u32,
    pub weight: u32,
    #[serde(skip)]
    pub representative: CommElement,
    /// Relative to the echelon homology basis of the block; basis-dependent.
    #[serde(serialize_with = "ser_rationals")]
    pub coordinates: Vec<BigRational>,
    /// Present exactly when every coordinate vanishes.
    #[serde(skip)]
    pub boundary_witness: Option<CommElement>,
    pub homology_dim: usize,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::rational::fmt_rational))
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.boundary_witness.is_some()
    }
}

/// Class of a bidegree-homogeneous cycle in graded homology.
pub fn class_of(alg: &CommDgAlgebra, e: &CommElement, cap: usize) -> Result<HomologyClass> {
    if e.is_zero() {
        return Err(Error::InvalidData("the zero element has no bidegree".into()));
    }
    let (p, w) = e.bidegree().ok_or(Error::Inhomogeneous)?;
    let de = alg.apply_d(e);
    if !de.is_zero() {
        return Err(Error::NotACycle(alg.fmt_element(&de)));
    }
    let block = HomologyBlock::compute(alg, p, w, cap)?;
    let (coordinates, witness) = block.decompose(&block.coords(e)?)?;
    let boundary = coordinates.iter().all(Zero::is_zero);
    Ok(HomologyClass {
        hdeg: p,
        weight: w,
        representative: e.clone(),
        coordinates,
        boundary_witness: boundary.then_some(witness),
        homology_dim: block.dim(),
    })
}

/// Σ(-1)^p dim H = Σ(-1)^p dim C on every complete weight column.
pub fn euler_check(table: &BettiTable) -> Result<bool> {
    if table.mode != Mode::Graded {
        return Err(Error::Unsupported("Euler check needs a graded table".into()));
    }
    Ok(table.complete_weights.iter().all(|&w| {
        let (mut h, mut c) = (0i64, 0i64);
        for p in 0..=table.max_hdeg {
            let s = if p % 2 == 0 { 1 } else { -1 };
            h += s * table.dim(p, w) as i64;
            c += s * table.chain(p, w) as i64;
        }
        h == c
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Report {
    pub n: usize,
    pub max_weight: u32,
    /// Indexed by weight `0..=max_weight`.
    pub oracle: Vec<usize>,
    pub betti: Vec<usize>,
    pub equal: bool,
}

/// Commutative polynomial in dense exponent vectors.
type Poly = BTreeMap<Vec<u32>, BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(BigRational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add_into(acc: &mut Poly, b: &Poly, k: &BigRational) {
    for (e, c) in b {
        let slot = acc.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += k * c;
    }
    acc.retain(|_, c| !c.is_zero());
}

fn exponent_vectors(weights: &[u32], w: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    fn go(weights: &[u32], k: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> Result<()> {
        if k == weights.len() {
            if rem == 0 {
                if out.len() >= cap {
                    return Err(Error::ResourceCap {
                        what: "H0 oracle monomials".into(),
                        limit: cap,
                    });
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        for e in 0..=rem / weights[k] {
            cur[k] = e;
            go(weights, k + 1, rem - e * weights[k], cur, out, cap)?;
        }
        cur[k] = 0;
        Ok(())
    }
    let mut out = Vec::new();
    go(weights, 0, w, &mut vec![0; weights.len()], &mut out, cap)?;
    Ok(out)
}

/// Entrywise image of a word relation under generic `n x n` matrices, built
/// directly in the polynomial ring on the degree-0 matrix entries.
fn relation_entries(rel: &NcPoly, slot: &HashMap<u32, usize>, n: usize, nvars: usize) -> Vec<Poly> {
    let unit = |e: Vec<u32>| -> Poly { [(e, BigRational::one())].into_iter().collect() };
    let mut total: Vec<Poly> = vec![Poly::new(); n * n];
    for (word, c) in rel.terms() {
        // row-major product of generic matrices, starting from the identity
        let mut m: Vec<Poly> = (0..n * n)
            .map(|k| if k / n == k % n { unit(vec![0; nvars]) } else { Poly::new() })
            .collect();
        for g in word {
            let base = slot[g];
            let mut next = vec![Poly::new(); n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut e = vec![0; nvars];
                        e[base + k * n + j] = 1;
                        let prod = poly_mul(&m[i * n + k], &unit(e));
                        poly_add_into(&mut next[i * n + j], &prod, &BigRational::one());
                    }
                }
            }
            m = next;
        }
        for (t, entry) in total.iter_mut().zip(&m) {
            poly_add_into(t, entry, c);
        }
    }
    total
}

/// Degree-0 homology predicted by the coordinate ring of the representation
/// scheme, computed without the chain complex, and compared with `betti`.
pub fn h0_oracle(pres: &DgPresentation, n: usize, max_weight: u32, cap: usize) -> Result<H0Report> {
    if pres.mode != Mode::Graded {
        return Err(Error::Unsupported("the H0 oracle needs a graded presentation".into()));
    }
    pres.ensure_valid()?;
    let zero: Vec<u32> = (0..pres.gens.len() as u32).filter(|&g| pres.gens.get(g).hdeg == 0).collect();
    let slot: HashMap<u32, usize> = zero.iter().enumerate().map(|(k, &g)| (g, k * n * n)).collect();
    let nvars = zero.len() * n * n;
    let weights: Vec<u32> = zero
        .iter()
        .flat_map(|&g| std::iter::repeat(pres.gens.get(g).weight).take(n * n))
        .collect();
    let mut relations: Vec<(u32, Poly)> = Vec::new();
    for g in 0..pres.gens.len() as u32 {
        let info = pres.gens.get(g);
        if info.hdeg != 1 {
            continue;
        }
        for e in relation_entries(&pres.diff[g as usize], &slot, n, nvars) {
            if !e.is_empty() {
                relations.push((info.weight, e));
            }
        }
    }
    let mut oracle = Vec::new();
    for w in 0..=max_weight {
        let monos = exponent_vectors(&weights, w, cap)?;
        let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<SparseVec> = Vec::new();
        for (rw, r) in &relations {
            if *rw > w {
                continue;
            }
            for m in exponent_vectors(&weights, w - rw, cap)? {
                let mut v: SparseVec = r
                    .iter()
                    .map(|(e, c)| {
                        let prod: Vec<u32> = e.iter().zip(&m).map(|(x, y)| x + y).collect();
                        (index[&prod], c.clone())
                    })
                    .collect();
                v.sort_by_key(|x| x.0);
                rows.push(v);
            }
        }
        oracle.push(monos.len() - rank_exact(&rows));
    }
    let alg = matrixify(pres, n)?;
    let table = betti(&alg, &BettiOptions::new(0, max_weight).monomial_cap(cap))?;
    let betti: Vec<usize> = (0..=max_weight).map(|w| table.dim(0, w)).collect();
    Ok(H0Report {
        n,
        max_weight,
        equal: oracle == betti,
        oracle,
        betti,
    })
}
