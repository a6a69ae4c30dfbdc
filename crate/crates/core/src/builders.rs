//! Canonical complexes: Shafarevich complexes of presentation data,
//! commutative Koszul complexes, the built-in examples, and the subspace of
//! relations lying in the commutator subspace of the free algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::commdga::{CommDgAlgebra, CommElement, CommVar, MatrixVar};
use crate::linalg::{ReducedBasis, SparseVec};
use crate::matrixify::{matrixify, pi_n_matrix, var_name};
use crate::ncpoly::{parse_nc, GeneratorInfo, GeneratorSet, NcPoly, Word};
use crate::presentation::{DgPresentation, Mode};
use crate::rational::{fmt_rational, parse_rational};
use crate::{Error, Result};

/// Presentation data `(V, L, j)`: degree-0 generators `V`, relation labels
/// `L` in degree 1, and `j(l)` in the free algebra on `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcciData {
    pub v: Vec<GeneratorInfo>,
    pub l: Vec<GeneratorInfo>,
    /// `j[k]` is the relation of `l[k]`, over the alphabet `v`.
    pub j: Vec<NcPoly>,
}

impl NcciData {
    /// `v` and `l` as `(name, weight)`; relations as expression strings over `v`.
    pub fn new(v: &[(&str, u32)], l: &[(&str, u32)], j: &[&str]) -> Result<Self> {
        let v: Vec<_> = v.iter().map(|(n, w)| GeneratorInfo::new(*n, 0, *w)).collect();
        let l: Vec<_> = l.iter().map(|(n, w)| GeneratorInfo::new(*n, 1, *w)).collect();
        let vs = GeneratorSet::new(v.clone())?;
        if j.len() != l.len() {
            return Err(Error::InvalidData("one relation per element of L".into()));
        }
        let j = j.iter().map(|e| parse_nc(e, &vs)).collect::<Result<Vec<_>>>()?;
        let data = Self { v, l, j };
        data.validate()?;
        Ok(data)
    }

    pub fn v_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.v.clone()).expect("validated")
    }

    pub fn validate(&self) -> Result<()> {
        let mut all = self.v.clone();
        all.extend(self.l.iter().cloned());
        GeneratorSet::new(all)?;
        if let Some(g) = self.v.iter().find(|g| g.hdeg != 0) {
            return Err(Error::InvalidData(format!("`{}` in V must have hdeg 0", g.name)));
        }
        if let Some(g) = self.l.iter().find(|g| g.hdeg != 1) {
            return Err(Error::InvalidData(format!("`{}` in L must have hdeg 1", g.name)));
        }
        if self.j.len() != self.l.len() {
            return Err(Error::InvalidData("one relation per element of L".into()));
        }
        let vs = GeneratorSet::new(self.v.clone())?;
        for (l, r) in self.l.iter().zip(&self.j) {
            if r.is_zero() {
                return Err(Error::InvalidData(format!("j({}) is zero", l.name)));
            }
            for (w, _) in r.terms() {
                if w.iter().any(|&g| g as usize >= vs.len()) {
                    return Err(Error::InvalidData(format!("j({}) uses an unknown letter", l.name)));
                }
                if vs.word_weight(w) != l.weight {
                    return Err(Error::InvalidData(format!(
                        "j({}) is not weight-homogeneous of weight {}",
                        l.name, l.weight
                    )));
                }
            }
        }
        for a in 0..self.j.len() {
            for b in a + 1..self.j.len() {
                if self.j[a] == self.j[b] {
                    return Err(Error::InvalidData(format!(
                        "j is not injective: j({}) = j({})",
                        self.l[a].name, self.l[b].name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The semi-free algebra on `V ⊕ L[1]` with `d(l) = j(l)`.
pub fn shafarevich(data: &NcciData) -> Result<DgPresentation> {
    shafarevich_named(data, "shafarevich")
}

fn shafarevich_named(data: &NcciData, name: &str) -> Result<DgPresentation> {
    data.validate()?;
    let mut infos = data.v.clone();
    infos.extend(data.l.iter().cloned());
    let gens = GeneratorSet::new(infos)?;
    let mut diff = vec![NcPoly::zero(); data.v.len()];
    // V occupies the first indices, so relations need no relabelling
    diff.extend(data.j.iter().cloned());
    Ok(DgPresentation::from_parts(name, gens, diff, Mode::Graded))
}

/// Commutative Koszul data: variables `w` in degree 0, variables `s` placed
/// in degree 1, and `f(s)` polynomials in `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulData {
    pub w: Vec<CommVar>,
    pub s: Vec<CommVar>,
    /// `f[k]` is an element over the variables `w` (indices `0..w.len()`).
    pub f: Vec<CommElement>,
}

impl KoszulData {
    /// `w` and `s` as `(name, weight)`; `f` as expressions in the `w` names.
    pub fn parse(w: &[(&str, u32)], s: &[(&str, u32)], f: &[&str]) -> Result<Self> {
        let wv: Vec<CommVar> = w.iter().map(|(n, wt)| CommVar::new(*n, 0, *wt)).collect();
        let sv: Vec<CommVar> = s.iter().map(|(n, wt)| CommVar::new(*n, 1, *wt)).collect();
        let zero = vec![CommElement::zero(); wv.len()];
        let ring = CommDgAlgebra::new("W", wv.clone(), zero, Mode::Graded)?;
        let f = f.iter().map(|e| ring.parse(e)).collect::<Result<Vec<_>>>()?;
        Ok(Self { w: wv, s: sv, f })
    }
}

/// The Koszul complex `Λ(W ⊕ S[1])` with `d(s) = f(s)`.
pub fn koszul(data: &KoszulData) -> Result<CommDgAlgebra> {
    koszul_named(data, "koszul")
}

fn koszul_named(data: &KoszulData, name: &str) -> Result<CommDgAlgebra> {
    if data.f.len() != data.s.len() {
        return Err(Error::InvalidData("one polynomial per element of S".into()));
    }
    for (s, f) in data.s.iter().zip(&data.f) {
        for (m, _) in f.terms() {
            if m.hdeg() != 0 || m.weight() != s.weight {
                return Err(Error::InvalidData(format!(
                    "f({}) must have hdeg 0 and weight {}",
                    s.name, s.weight
                )));
            }
            if m.even().iter().any(|(v, _)| *v as usize >= data.w.len())
                || m.odd().iter().any(|v| *v as usize >= data.w.len())
            {
                return Err(Error::InvalidData(format!("f({}) uses an unknown variable", s.name)));
            }
        }
    }
    let mut vars = data.w.clone();
    let mut d = vec![CommElement::zero(); data.w.len()];
    for (s, f) in data.s.iter().zip(&data.f) {
        let mut v = s.clone();
        v.hdeg = 1;
        vars.push(v);
        d.push(f.clone());
    }
    CommDgAlgebra::new(name, vars, d, Mode::Graded)
}

/// Koszul data `(V_n, L_n, j_n)` of the matrixified presentation data, with
/// `j_n(l[p][q])` computed as the `(p, q)` entry of a product of generic matrices.
pub fn matrixified_koszul_data(data: &NcciData, n: usize) -> Result<KoszulData> {
    data.validate()?;
    let free = DgPresentation::from_parts(
        "V",
        data.v_set(),
        vec![NcPoly::zero(); data.v.len()],
        Mode::Graded,
    );
    let vn = matrixify(&free, n)?;
    let mut s = Vec::new();
    let mut f = Vec::new();
    for (k, l) in data.l.iter().enumerate() {
        let m = pi_n_matrix(&vn, &data.j[k])?;
        for (p, row) in m.into_iter().enumerate() {
            for (q, e) in row.into_iter().enumerate() {
                s.push(CommVar {
                    name: var_name(&l.name, p + 1, q + 1),
                    hdeg: 1,
                    weight: l.weight,
                    origin: Some(MatrixVar {
                        gen: (data.v.len() + k) as u32,
                        row: (p + 1) as u32,
                        col: (q + 1) as u32,
                    }),
                });
                f.push(e);
            }
        }
    }
    Ok(KoszulData {
        w: vn.vars().to_vec(),
        s,
        f,
    })
}

/// Same variables (by name, bidegree) with identical normalized differentials.
pub fn structurally_equal(a: &CommDgAlgebra, b: &CommDgAlgebra) -> bool {
    if a.vars().len() != b.vars().len() {
        return false;
    }
    for (i, va) in a.vars().iter().enumerate() {
        let Some(j) = b.var_index(&va.name) else { return false };
        let vb = &b.vars()[j];
        if (va.hdeg, va.weight) != (vb.hdeg, vb.weight) {
            return false;
        }
        let Ok(db) = a.parse(&b.fmt_element(b.d_var(j))) else { return false };
        if &db != a.d_var(i) {
            return false;
        }
    }
    true
}

/// The built-in presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// Free algebra on `m` generators.
    Free(usize),
    /// `k[x, y]` resolved by `dt = xy - yx`.
    CommutingPlane,
    /// `k<x, y>/(xy - q yx)`, `q != 0, 1`.
    QPlane(BigRational),
    /// `k<x_1..x_m>/(ad_{q_1}(x_1) ... ad_{q_{m-1}}(x_{m-1}) x_m)`.
    MultiQ(Vec<BigRational>),
    /// Koszul resolution of `k[x, y, z]`.
    Poly3,
    /// Resolution of `U(sl_2)`; weight-filtered.
    Usl2,
    /// Resolution of `k[x]/(x^2)` truncated at the given maximal weight.
    DualNumbers(u32),
}

pub const BUILTIN_NAMES: [(&str, &str); 7] = [
    ("free", "free(m): free algebra on m generators"),
    ("commuting-plane", "k[x,y] via dt = xy - yx"),
    ("qplane", "qplane(q): k<x,y>/(xy - q yx), q != 0, 1"),
    ("multi-q", "multi-q(q_1..q_{m-1}): iterated q-commutator relation"),
    ("poly3", "k[x,y,z] via its minimal Koszul resolution"),
    ("usl2", "U(sl2), filtered"),
    ("dual-numbers", "dual-numbers(W): k[x]/(x^2), resolution truncated at weight W"),
];

impl Builtin {
    pub fn parse(name: &str, params: &[String]) -> Result<Self> {
        let need = |k: usize| -> Result<()> {
            if params.len() != k {
                Err(Error::BadParams(format!("`{name}` takes {k} parameter(s)")))
            } else {
                Ok(())
            }
        };
        let uint = |s: &str| -> Result<u32> {
            s.parse::<u32>()
                .map_err(|_| Error::BadParams(format!("`{s}` is not a non-negative integer")))
        };
        Ok(match name {
            "free" => {
                need(1)?;
                Builtin::Free(uint(&params[0])? as usize)
            }
            "commuting-plane" => {
                need(0)?;
                Builtin::CommutingPlane
            }
            "qplane" => {
                need(1)?;
                Builtin::QPlane(parse_rational(&params[0])?)
            }
            "multi-q" => {
                if params.is_empty() {
                    return Err(Error::BadParams("multi-q needs at least one q".into()));
                }
                Builtin::MultiQ(params.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?)
            }
            "poly3" => {
                need(0)?;
                Builtin::Poly3
            }
            "usl2" => {
                need(0)?;
                Builtin::Usl2
            }
            "dual-numbers" => {
                need(1)?;
                Builtin::DualNumbers(uint(&params[0])?)
            }
            other => return Err(Error::UnknownBuiltin(other.to_string())),
        })
    }

    /// Presentation data, for the built-ins that are Shafarevich complexes.
    pub fn ncci_data(&self) -> Result<Option<NcciData>> {
        Ok(Some(match self {
            Builtin::Free(m) => {
                if *m == 0 {
                    return Err(Error::BadParams("free(m) needs m >= 1".into()));
                }
                let names = free_names(*m);
                let v: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
                NcciData::new(&v, &[], &[])?
            }
            Builtin::CommutingPlane => {
                NcciData::new(&[("x", 1), ("y", 1)], &[("t", 2)], &["x*y - y*x"])?
            }
            Builtin::QPlane(q) => {
                if q.is_one() {
                    return Err(Error::BadParams(
                        "qplane with q = 1 is the commuting plane; use `commuting-plane`".into(),
                    ));
                }
                if q.is_zero() {
                    return Err(Error::BadParams("q must be nonzero".into()));
                }
                let rel = format!("x*y - {}*y*x", fmt_rational(q));
                let rel = rel.replace("- -", "+ ");
                NcciData::new(&[("x", 1), ("y", 1)], &[("t", 2)], &[rel.as_str()])?
            }
            Builtin::MultiQ(qs) => {
                if qs.iter().any(|q| q.is_zero()) {
                    return Err(Error::BadParams("every q_i must be nonzero".into()));
                }
                let m = qs.len() + 1;
                let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
                let v: Vec<GeneratorInfo> =
                    names.iter().map(|s| GeneratorInfo::new(s.as_str(), 0, 1)).collect();
                // ad_{q_1}(x_1) ... ad_{q_{m-1}}(x_{m-1}) applied to x_m
                let mut r = NcPoly::letter((m - 1) as u32);
                for (i, q) in qs.iter().enumerate().rev() {
                    let x = NcPoly::letter(i as u32);
                    r = &(&x * &r) - &(&r * &x).scale(q);
                }
                NcciData {
                    v,
                    l: vec![GeneratorInfo::new("t", 1, m as u32)],
                    j: vec![r],
                }
            }
            _ => return Ok(None),
        }))
    }

    pub fn label(&self) -> String {
        match self {
            Builtin::Free(m) => format!("free({m})"),
            Builtin::CommutingPlane => "commuting-plane".into(),
            Builtin::QPlane(q) => format!("qplane({})", fmt_rational(q)),
            Builtin::MultiQ(qs) => format!(
                "multi-q({})",
                qs.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
            ),
            Builtin::Poly3 => "poly3".into(),
            Builtin::Usl2 => "usl2".into(),
            Builtin::DualNumbers(w) => format!("dual-numbers({w})"),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn free_names(m: usize) -> Vec<String> {
    match m {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=m).map(|i| format!("x{i}")).collect(),
    }
}

const XYZ_GENS: [(&str, u32, u32); 7] = [
    ("x", 0, 1),
    ("y", 0, 1),
    ("z", 0, 1),
    ("xi", 1, 2),
    ("theta", 1, 2),
    ("lambda", 1, 2),
    ("t", 2, 3),
];

pub fn builtin(b: &Builtin) -> Result<DgPresentation> {
    let label = b.label();
    if let Some(data) = b.ncci_data()? {
        return shafarevich_named(&data, &label);
    }
    let gens = || XYZ_GENS.iter().map(|(n, h, w)| GeneratorInfo::new(*n, *h, *w)).collect();
    let dt = "x*xi - xi*x + y*theta - theta*y + z*lambda - lambda*z";
    match b {
        Builtin::Poly3 => DgPresentation::new(
            label,
            gens(),
            &[
                ("xi", "y*z - z*y"),
                ("theta", "z*x - x*z"),
                ("lambda", "x*y - y*x"),
                ("t", dt),
            ],
            Mode::Graded,
        ),
        Builtin::Usl2 => DgPresentation::new(
            label,
            gens(),
            &[
                ("xi", "y*z - z*y + x"),
                ("theta", "z*x - x*z + y"),
                ("lambda", "x*y - y*x + z"),
                ("t", dt),
            ],
            Mode::Filtered,
        ),
        Builtin::DualNumbers(max_weight) => dual_numbers(*max_weight, &label),
        _ => unreachable!("handled as presentation data"),
    }
}

/// `k<x, t_1, t_2, ...>` with `dt_p = sum_{i=0}^{p-1} (-1)^i t_i t_{p-1-i}`,
/// `t_0 := x`; `t_p` has hdeg `p` and weight `p + 1`.
fn dual_numbers(max_weight: u32, label: &str) -> Result<DgPresentation> {
    if max_weight == 0 {
        return Err(Error::BadParams("dual-numbers needs a maximal weight >= 1".into()));
    }
    let top = max_weight as usize;
    let mut infos = vec![GeneratorInfo::new("x", 0, 1)];
    for p in 1..=top {
        infos.push(GeneratorInfo::new(format!("t{p}"), p as u32, p as u32 + 1));
    }
    let gens = GeneratorSet::new(infos)?;
    let mut diff = vec![NcPoly::zero()];
    for p in 1..=top {
        let mut d = NcPoly::zero();
        for i in 0..p {
            let c = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            let w: Word = vec![i as u32, (p - 1 - i) as u32];
            d.add_term(w, c);
        }
        diff.push(d);
    }
    let full = DgPresentation::from_parts(label, gens, diff, Mode::Graded);
    full.truncate_by_weight(max_weight)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L0Weight {
    pub weight: u32,
    /// Names of the relations of this weight, in `L` order.
    pub relations: Vec<String>,
    pub dim_l0: usize,
    /// Basis vectors of `L_0` in this weight, as coordinates over `relations`.
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L0Report {
    pub weights: Vec<L0Weight>,
}

impl L0Report {
    pub fn total_dim(&self) -> usize {
        self.weights.iter().map(|w| w.dim_l0).sum()
    }

    /// `L_0` basis vectors as coordinates over all of `L`, with their weights.
    pub fn basis_in_l(&self, data: &NcciData) -> Vec<(u32, Vec<BigRational>)> {
        let mut out = Vec::new();
        for w in &self.weights {
            for b in &w.basis {
                let mut v = vec![BigRational::zero(); data.l.len()];
                for (name, c) in w.relations.iter().zip(b) {
                    let k = data.l.iter().position(|g| &g.name == name).expect("known");
                    v[k] = parse_rational(c).expect("formatted rational");
                }
                out.push((w.weight, v));
            }
        }
        out
    }
}

/// Least rotation of a cyclic word.
pub fn cyclic_representative(w: &[u32]) -> Word {
    (0..w.len().max(1))
        .map(|r| {
            let mut v = w[r.min(w.len())..].to_vec();
            v.extend_from_slice(&w[..r.min(w.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// `L_0 = j^{-1}([T V, T V])`: a relation lies in the commutator subspace iff
/// its coefficients sum to zero on every cyclic-word class.
pub fn compute_l0(data: &NcciData) -> Result<L0Report> {
    data.validate()?;
    let mut by_weight: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, l) in data.l.iter().enumerate() {
        by_weight.entry(l.weight).or_default().push(k);
    }
    let mut weights = Vec::new();
    for (w, ks) in by_weight {
        // rows: cyclic classes; columns: relations of weight w
        let mut class_index: HashMap<Word, usize> = HashMap::new();
        let mut rows: Vec<BTreeMap<usize, BigRational>> = Vec::new();
        for (col, &k) in ks.iter().enumerate() {
            for (word, c) in data.j[k].terms() {
                let rep = cyclic_representative(word);
                let next = class_index.len();
                let r = *class_index.entry(rep).or_insert(next);
                if r == rows.len() {
                    rows.push(BTreeMap::new());
                }
                *rows[r].entry(col).or_insert_with(BigRational::zero) += c;
            }
        }
        let sparse: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let kernel = ReducedBasis::from_rows(&sparse).kernel(ks.len());
        let basis = kernel
            .iter()
            .map(|v| {
                let mut dense = vec![BigRational::zero(); ks.len()];
                for (c, x) in v {
                    dense[*c] = x.clone();
                }
                dense.iter().map(fmt_rational).collect()
            })
            .collect::<Vec<Vec<String>>>();
        weights.push(L0Weight {
            weight: w,
            relations: ks.iter().map(|&k| data.l[k].name.clone()).collect(),
            dim_l0: basis.len(),
            basis,
        });
    }
    Ok(L0Report { weights })
}

/// The Koszul complex `K(A_n, (V_n, L_0^⊥, j_n))` for a complement of the
/// traces of `L_0` inside `L_n`, together with the bidegrees `(1, weight)` of
/// the split-off exterior generators. The complement is spanned by coordinate
/// variables `l[p][q]` chosen greedily per weight.
pub fn l0_complement_koszul(data: &NcciData, n: usize) -> Result<(CommDgAlgebra, Vec<u32>)> {
    let report = compute_l0(data)?;
    let kd = matrixified_koszul_data(data, n)?;
    let l0 = report.basis_in_l(data);
    // coordinates in L_n: index k*n*n + p*n + q for l_k[p][q]
    let nn = n * n;
    let mut keep = Vec::new();
    let mut split_weights = Vec::new();
    let mut by_weight: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, l) in data.l.iter().enumerate() {
        by_weight.entry(l.weight).or_default().push(k);
    }
    for (w, ks) in by_weight {
        let mut span = ReducedBasis::default();
        for (lw, v) in &l0 {
            if *lw != w {
                continue;
            }
            let mut tr: SparseVec = Vec::new();
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    tr.push((k * nn + i * n + i, c.clone()));
                }
            }
            tr.sort_by_key(|e| e.0);
            if span.insert(tr) {
                split_weights.push(w);
            }
        }
        for &k in &ks {
            for pq in 0..nn {
                let idx = k * nn + pq;
                if span.insert(vec![(idx, BigRational::one())]) {
                    keep.push(idx);
                }
            }
        }
    }
    let data = KoszulData {
        w: kd.w,
        s: keep.iter().map(|&i| kd.s[i].clone()).collect(),
        f: keep.iter().map(|&i| kd.f[i].clone()).collect(),
    };
    Ok((koszul_named(&data, "koszul-l0-complement")?, split_weights))
}
