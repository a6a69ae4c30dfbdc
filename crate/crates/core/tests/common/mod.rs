//! Oracles and generators shared by the integration suites. Nothing here
//! calls into the homology engine.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use repho_core::ncpoly::{GeneratorInfo, GeneratorSet, NcPoly};
use repho_core::presentation::{DgPresentation, Mode};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Commutative polynomial with dense exponent vectors.
pub type Poly = BTreeMap<Vec<u32>, BigRational>;

pub fn var(nvars: usize, i: usize) -> Poly {
    let mut e = vec![0; nvars];
    e[i] = 1;
    [(e, q(1))].into_iter().collect()
}

pub fn constant(nvars: usize, c: i64) -> Poly {
    [(vec![0; nvars], q(c))].into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn add(a: &Poly, b: &Poly, k: i64) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(BigRational::zero) += c * q(k);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exponent vectors of total degree `d` (all variables of weight 1).
pub fn monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(k: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == cur.len() {
            cur[k] = rem;
            out.push(cur.clone());
            return;
        }
        for e in 0..=rem {
            cur[k] = e;
            go(k + 1, rem - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// Row echelon rank over the rationals with plain elimination.
pub fn rank(rows: Vec<BTreeMap<usize, BigRational>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut r in rows {
        r.retain(|_, c| !c.is_zero());
        while let Some((&lead, a)) = r.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let k = a / &p[&lead];
            for (c, x) in p {
                *r.entry(*c).or_insert_with(BigRational::zero) -= &k * x;
            }
            r.retain(|_, c| !c.is_zero());
        }
        if let Some((&lead, _)) = r.iter().next() {
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}

/// Weight-`w` dimension of the graded module `⊕ S(-g_k) / (I·⊕ + relations)`
/// over `S = k[nvars]` with all variables of weight 1; `ideal` and each
/// relation component are homogeneous polynomials.
pub fn module_dim(nvars: usize, gen_weights: &[u32], ideal: &[Poly], relations: &[Vec<Poly>], w: u32) -> usize {
    let deg = |p: &Poly| -> u32 { p.keys().next().map_or(0, |e| e.iter().sum()) };
    let mut cols: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    for (k, &g) in gen_weights.iter().enumerate() {
        if g <= w {
            for m in monomials(nvars, w - g) {
                let n = cols.len();
                cols.insert((k, m), n);
            }
        }
    }
    let mut rows = Vec::new();
    let push = |vecs: &[Poly], rows: &mut Vec<BTreeMap<usize, BigRational>>| {
        let mut row = BTreeMap::new();
        for (k, p) in vecs.iter().enumerate() {
            for (e, c) in p {
                *row.entry(cols[&(k, e.clone())]).or_insert_with(BigRational::zero) += c;
            }
        }
        rows.push(row);
    };
    // relation weight = generator weight + component degree, for any nonzero component
    let rel_weight = |r: &[Poly]| -> Option<u32> {
        r.iter().enumerate().find(|(_, p)| !p.is_empty()).map(|(k, p)| gen_weights[k] + deg(p))
    };
    for (k, &g) in gen_weights.iter().enumerate() {
        for f in ideal {
            let fw = g + deg(f);
            if fw > w {
                continue;
            }
            for m in monomials(nvars, w - fw) {
                let mp: Poly = [(m, q(1))].into_iter().collect();
                let mut v = vec![Poly::new(); gen_weights.len()];
                v[k] = mul(&mp, f);
                push(&v, &mut rows);
            }
        }
    }
    for r in relations {
        let Some(rw) = rel_weight(r) else { continue };
        if rw > w {
            continue;
        }
        for m in monomials(nvars, w - rw) {
            let mp: Poly = [(m, q(1))].into_iter().collect();
            let v: Vec<Poly> = r.iter().map(|p| mul(&mp, p)).collect();
            push(&v, &mut rows);
        }
    }
    cols.len() - rank(rows)
}

/// Bigraded dimensions `[p][w]` of the free graded-commutative algebra on
/// variables `(hdeg, weight)`; odd hdeg is exterior.
pub fn free_gc_dims(vars: &[(u32, u32)], pmax: u32, wmax: u32) -> Vec<Vec<i64>> {
    let (pn, wn) = (pmax as usize + 1, wmax as usize + 1);
    let mut series = vec![vec![0i64; wn]; pn];
    series[0][0] = 1;
    for &(h, w) in vars {
        let (h, w) = (h as usize, w as usize);
        let mut next = vec![vec![0i64; wn]; pn];
        for p in 0..pn {
            for x in 0..wn {
                if series[p][x] == 0 {
                    continue;
                }
                let mut k = 0;
                loop {
                    let (pp, ww) = (p + k * h, x + k * w);
                    if pp >= pn || ww >= wn || (h % 2 == 1 && k > 1) {
                        break;
                    }
                    next[pp][ww] += series[p][x];
                    k += 1;
                    if h == 0 && w == 0 {
                        break;
                    }
                }
            }
        }
        series = next;
    }
    series
}

fn random_hom(rng: &mut ChaCha8Rng, letters: &[(u32, u32)], weight: u32) -> NcPoly {
    // random words over hdeg-0 letters (index, weight) with total weight `weight`
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut word = Vec::new();
        let mut rem = weight;
        while rem > 0 {
            let fits: Vec<_> = letters.iter().filter(|(_, w)| *w <= rem).collect();
            if fits.is_empty() {
                return p;
            }
            let (g, w) = *fits[rng.gen_range(0..fits.len())];
            word.push(g);
            rem -= w;
        }
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            p.add_term(word, q(c));
        }
    }
    p
}

/// A random graded presentation with at most 4 generators: one or two
/// degree-0 letters, a degree-1 letter `t` with a random homogeneous
/// relation, and optionally a degree-2 letter `s` with
/// `ds = c (u (dt) t v - u t (dt) v)`, which squares to zero.
pub fn random_presentation(rng: &mut ChaCha8Rng) -> DgPresentation {
    let two = rng.gen_bool(0.6);
    let mut infos = vec![GeneratorInfo::new("x", 0, rng.gen_range(1..=2))];
    if two {
        infos.push(GeneratorInfo::new("y", 0, 1));
    }
    let letters: Vec<(u32, u32)> = infos.iter().enumerate().map(|(i, g)| (i as u32, g.weight)).collect();
    let tw = rng.gen_range(1..=3);
    let ti = infos.len() as u32;
    infos.push(GeneratorInfo::new("t", 1, tw));
    let mut diff: Vec<NcPoly> = vec![NcPoly::zero(); letters.len()];
    let dt = random_hom(rng, &letters, tw);
    diff.push(dt.clone());
    if rng.gen_bool(0.7) {
        let (ug, uw) = letters[rng.gen_range(0..letters.len())];
        let (v, vw) = if rng.gen_bool(0.5) { (NcPoly::one(), 0) } else { (NcPoly::letter(0), letters[0].1) };
        let t = NcPoly::letter(ti);
        let inner = &(&dt * &t) - &(&t * &dt);
        let ds = &(&NcPoly::letter(ug) * &inner) * &v;
        infos.push(GeneratorInfo::new("s", 2, uw + 2 * tw + vw));
        diff.push(ds.scale(&q(rng.gen_range(1..=3))));
    }
    let gens = GeneratorSet::new(infos).expect("distinct names");
    DgPresentation::from_parts("random", gens, diff, Mode::Graded)
}

pub fn one() -> BigRational {
    BigRational::one()
}
