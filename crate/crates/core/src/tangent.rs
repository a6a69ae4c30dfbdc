//! Derived tangent spaces at a point of the representation scheme.
//!
//! At a point `x`, a derivation `O -> k_x` of degree `i` is fixed by its
//! values on the hdeg-`i` variables. The differential into degree `i` is the
//! Jacobian `J_i[v][u] = (∂ d(v) / ∂u)(x)` over hdeg-`(i+1)` variables `v` and
//! hdeg-`i` variables `u`, all positive-degree variables set to zero.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::commdga::{CommDgAlgebra, CommElement, Monomial};
use crate::linalg::RatMatrix;
use crate::rational::{fmt_rational, parse_rational};
use crate::{Error, Result};

/// An `n x n` rational matrix for every hdeg-0 generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepPoint {
    pub n: usize,
    pub values: BTreeMap<String, Vec<Vec<BigRational>>>,
}

impl RepPoint {
    pub fn new(values: BTreeMap<String, Vec<Vec<BigRational>>>) -> Result<Self> {
        let n = values.values().next().map_or(0, Vec::len);
        for (g, m) in &values {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidData(format!("matrix of `{g}` is not {n}x{n}")));
            }
        }
        Ok(Self { n, values })
    }

    /// Parses `{"x": [[row], ...], ...}`; entries are integers or rational strings.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, Vec<Vec<serde_json::Value>>> = serde_json::from_str(text)?;
        let mut values = BTreeMap::new();
        for (g, rows) in raw {
            let m = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| match v {
                            serde_json::Value::Number(x) if x.is_i64() => {
                                Ok(BigRational::from_integer(x.as_i64().expect("checked").into()))
                            }
                            serde_json::Value::String(s) => parse_rational(s),
                            other => Err(Error::Schema(format!("matrix entry `{other}` is not a rational"))),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            values.insert(g, m);
        }
        Self::new(values)
    }

    pub fn to_json_string(&self) -> String {
        let m: BTreeMap<&String, Vec<Vec<String>>> = self
            .values
            .iter()
            .map(|(g, m)| (g, m.iter().map(|r| r.iter().map(fmt_rational).collect()).collect()))
            .collect();
        serde_json::to_string_pretty(&m).expect("serializable")
    }

    /// Zero matrices for the given generators.
    pub fn zero(n: usize, gens: &[&str]) -> Self {
        let z = vec![vec![BigRational::zero(); n]; n];
        Self {
            n,
            values: gens.iter().map(|g| (g.to_string(), z.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentComplex {
    pub n: usize,
    /// `dims[i]` = number of hdeg-`i` variables.
    pub dims: Vec<usize>,
    /// `ranks[i]` = rank of `J_i` (between degrees `i` and `i + 1`).
    pub ranks: Vec<usize>,
    #[serde(skip)]
    pub jacobians: Vec<RatMatrix>,
}

impl TangentComplex {
    /// `π_i` for every degree of the complex.
    pub fn homology(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| {
                let out = self.ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { self.ranks[i - 1] };
                self.dims[i] - out - inc
            })
            .collect()
    }

    /// Σ(-1)^i π_i = Σ(-1)^i dim_i.
    pub fn euler_holds(&self) -> bool {
        let alt = |v: &[usize]| -> i64 {
            v.iter()
                .enumerate()
                .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum()
        };
        alt(&self.homology()) == alt(&self.dims)
    }
}

/// Value at the point of a monomial in hdeg-0 variables.
fn evaluate(m: &Monomial, at: &[Option<BigRational>]) -> BigRational {
    let mut v = BigRational::from_integer(1.into());
    for &(var, e) in m.even() {
        let x = at[var as usize].as_ref().expect("degree-0 variable");
        for _ in 0..e {
            v = &v * x;
        }
    }
    v
}

/// `(∂f/∂u)` evaluated at the point with positive-degree variables set to zero.
fn partial_at(alg: &CommDgAlgebra, f: &CommElement, u: usize, at: &[Option<BigRational>]) -> BigRational {
    let mut s = BigRational::zero();
    let uv = u as u32;
    for (m, c) in f.terms() {
        let e = m.exponent(uv);
        if e == 0 {
            continue;
        }
        // the remaining factor must lie in degree 0
        if m.hdeg() != alg.vars()[u].hdeg {
            continue;
        }
        let mut val = c * BigRational::from_integer(e.into());
        for &(var, k) in m.even() {
            let k = if var == uv { k - 1 } else { k };
            if k == 0 {
                continue;
            }
            let x = at[var as usize].as_ref().expect("degree-0 variable");
            for _ in 0..k {
                val = &val * x;
            }
        }
        s += val;
    }
    s
}

pub fn tangent_complex(alg: &CommDgAlgebra, pt: &RepPoint) -> Result<TangentComplex> {
    let info = alg
        .matrix_info()
        .ok_or_else(|| Error::Unsupported("algebra was not produced by matrixification".into()))?;
    if pt.n != info.n {
        return Err(Error::InvalidData(format!(
            "point has {}x{} matrices but n = {}",
            pt.n, pt.n, info.n
        )));
    }
    for g in pt.values.keys() {
        if !info.gens.iter().any(|x| &x.name == g && x.hdeg == 0) {
            return Err(Error::InvalidData(format!("`{g}` is not a degree-0 generator")));
        }
    }
    let mut at: Vec<Option<BigRational>> = vec![None; alg.vars().len()];
    for (i, v) in alg.vars().iter().enumerate() {
        if v.hdeg != 0 {
            continue;
        }
        let o = v.origin.expect("matrix variable");
        let g = &info.gens[o.gen as usize].name;
        let m = pt
            .values
            .get(g)
            .ok_or_else(|| Error::InvalidData(format!("point assigns no matrix to `{g}`")))?;
        at[i] = Some(m[o.row as usize - 1][o.col as usize - 1].clone());
    }
    for (i, v) in alg.vars().iter().enumerate() {
        if v.hdeg != 1 {
            continue;
        }
        let mut val = BigRational::zero();
        for (m, c) in alg.d_var(i).terms() {
            val += c * evaluate(m, &at);
        }
        if !val.is_zero() {
            return Err(Error::PointNotOnScheme {
                variable: v.name.clone(),
                value: fmt_rational(&val),
            });
        }
    }
    let top = alg.max_var_hdeg() as usize;
    let by_deg: Vec<Vec<usize>> = (0..=top)
        .map(|i| (0..alg.vars().len()).filter(|&k| alg.vars()[k].hdeg as usize == i).collect())
        .collect();
    let mut jacobians = Vec::new();
    for i in 0..top {
        let (rows, cols) = (&by_deg[i + 1], &by_deg[i]);
        let mut j = RatMatrix::zeros(rows.len(), cols.len());
        for (r, &v) in rows.iter().enumerate() {
            for (c, &u) in cols.iter().enumerate() {
                let x = partial_at(alg, alg.d_var(v), u, &at);
                if !x.is_zero() {
                    j.set(r, c, x);
                }
            }
        }
        jacobians.push(j);
    }
    Ok(TangentComplex {
        n: info.n,
        dims: by_deg.iter().map(Vec::len).collect(),
        ranks: jacobians.iter().map(RatMatrix::rank).collect(),
        jacobians,
    })
}

/// `π_0, ..., π_max_deg`; degrees above the top variable degree are zero.
pub fn pi(alg: &CommDgAlgebra, pt: &RepPoint, max_deg: usize) -> Result<Vec<usize>> {
    let h = tangent_complex(alg, pt)?.homology();
    Ok((0..=max_deg).map(|i| h.get(i).copied().unwrap_or(0)).collect())
}
