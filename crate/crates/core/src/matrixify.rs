//! The representation functor on semi-free presentations.
//!
//! Each generator `g` becomes an `n x n` matrix of fresh commutative variables
//! `g[i][j]` of the same bidegree; the differential of `g[i][j]` is the
//! `(i, j)` entry of the image of `d(g)` under the universal representation.
//! Coefficients live in degree 0, so the matrix-element signs are all `+1`.

use num_rational::BigRational;

use crate::commdga::{normalize, CommDgAlgebra, CommElement, CommVar, MatrixInfo, MatrixVar};
use crate::ncpoly::NcPoly;
use crate::presentation::DgPresentation;
use crate::{Error, Result};

/// The matrix of variables attached to one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMatrix {
    pub gen: String,
    /// `entries[i][j]` is the variable index of `gen[i+1][j+1]`.
    pub entries: Vec<Vec<usize>>,
}

pub fn var_name(gen: &str, row: usize, col: usize) -> String {
    format!("{gen}[{row}][{col}]")
}

fn var_pos(n: usize, g: usize, i: usize, j: usize) -> usize {
    g * n * n + i * n + j
}

pub fn matrixify(pres: &DgPresentation, n: usize) -> Result<CommDgAlgebra> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("matrix size must be at least 1".into()));
    }
    pres.ensure_valid()?;
    let mut vars = Vec::with_capacity(pres.gens.len() * n * n);
    for (g, info) in pres.gens.infos().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                vars.push(CommVar {
                    name: var_name(&info.name, i + 1, j + 1),
                    hdeg: info.hdeg,
                    weight: info.weight,
                    origin: Some(MatrixVar {
                        gen: g as u32,
                        row: (i + 1) as u32,
                        col: (j + 1) as u32,
                    }),
                });
            }
        }
    }
    let mut d = Vec::with_capacity(vars.len());
    for g in 0..pres.gens.len() {
        for i in 0..n {
            for j in 0..n {
                d.push(entry_by_paths(&vars, n, &pres.diff[g], i, j));
            }
        }
    }
    let alg = CommDgAlgebra::new(pres.name.clone(), vars, d, pres.mode)?;
    Ok(alg.with_matrix_info(MatrixInfo {
        n,
        gens: pres.gens.infos().to_vec(),
    }))
}

/// `(i, j)` entry of the image of `p`, expanded as a sum over index paths
/// `i = k_0, k_1, ..., k_m = j` with letters kept in word order.
fn entry_by_paths(vars: &[CommVar], n: usize, p: &NcPoly, i: usize, j: usize) -> CommElement {
    let mut raw: Vec<(BigRational, Vec<usize>)> = Vec::new();
    for (w, c) in p.terms() {
        if w.is_empty() {
            if i == j {
                raw.push((c.clone(), Vec::new()));
            }
            continue;
        }
        let mut letters = Vec::with_capacity(w.len());
        walk(n, w, 0, i, j, &mut letters, &mut |ls| raw.push((c.clone(), ls.to_vec())));
    }
    normalize(vars, &raw)
}

fn walk(
    n: usize,
    w: &[u32],
    k: usize,
    row: usize,
    last_col: usize,
    letters: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let g = w[k] as usize;
    if k + 1 == w.len() {
        letters.push(var_pos(n, g, row, last_col));
        emit(letters);
        letters.pop();
        return;
    }
    for col in 0..n {
        letters.push(var_pos(n, g, row, col));
        walk(n, w, k + 1, col, last_col, letters, emit);
        letters.pop();
    }
}

fn matrix_info(alg: &CommDgAlgebra) -> Result<&MatrixInfo> {
    alg.matrix_info()
        .ok_or_else(|| Error::Unsupported("algebra was not produced by matrixification".into()))
}

pub fn gen_matrix(alg: &CommDgAlgebra, gen: &str) -> Result<GenMatrix> {
    let info = matrix_info(alg)?;
    let g = info
        .gens
        .iter()
        .position(|x| x.name == gen)
        .ok_or_else(|| Error::UnknownGenerator(gen.to_string()))?;
    let n = info.n;
    Ok(GenMatrix {
        gen: gen.to_string(),
        entries: (0..n)
            .map(|i| (0..n).map(|j| var_pos(n, g, i, j)).collect())
            .collect(),
    })
}

pub type ElemMatrix = Vec<Vec<CommElement>>;

fn mat_mul(a: &ElemMatrix, b: &ElemMatrix) -> ElemMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut s = CommElement::zero();
                    for j in 0..n {
                        if a[i][j].is_zero() || b[j][k].is_zero() {
                            continue;
                        }
                        s = &s + &(&a[i][j] * &b[j][k]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn identity_matrix(n: usize) -> ElemMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CommElement::one() } else { CommElement::zero() })
                .collect()
        })
        .collect()
}

/// Matrix of elements `gen[i][j]`.
pub fn gen_matrix_elements(alg: &CommDgAlgebra, gen: &str) -> Result<ElemMatrix> {
    let gm = gen_matrix(alg, gen)?;
    Ok(gm
        .entries
        .iter()
        .map(|r| r.iter().map(|&v| alg.var(v)).collect())
        .collect())
}

/// Product of generator matrices for the letters of a word.
pub fn word_matrix(alg: &CommDgAlgebra, letters: &[&str]) -> Result<ElemMatrix> {
    let n = matrix_info(alg)?.n;
    let mut acc = identity_matrix(n);
    for l in letters {
        acc = mat_mul(&acc, &gen_matrix_elements(alg, l)?);
    }
    Ok(acc)
}

/// Image of a noncommutative polynomial under the universal representation,
/// computed by multiplying generator matrices.
pub fn pi_n_matrix(alg: &CommDgAlgebra, p: &NcPoly) -> Result<ElemMatrix> {
    let info = matrix_info(alg)?;
    let n = info.n;
    let mut out: ElemMatrix = vec![vec![CommElement::zero(); n]; n];
    for (w, c) in p.terms() {
        let names: Vec<&str> = w.iter().map(|&g| info.gens[g as usize].name.as_str()).collect();
        let m = word_matrix(alg, &names)?;
        for i in 0..n {
            for j in 0..n {
                out[i][j] = &out[i][j] + &m[i][j].scale(c);
            }
        }
    }
    Ok(out)
}

/// Checks that `d` applied entrywise to every generator matrix equals the
/// image of `d(g)`, i.e. that the universal representation is a DG map.
pub fn universal_representation_holds(pres: &DgPresentation, alg: &CommDgAlgebra) -> Result<bool> {
    for (g, info) in pres.gens.infos().iter().enumerate() {
        let gm = gen_matrix(alg, &info.name)?;
        let image = pi_n_matrix(alg, &pres.diff[g])?;
        for (i, row) in gm.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if alg.apply_d(&alg.var(v)) != image[i][j] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The degree-0 derivation `X -> [X, E_ab]` applied to `f` (1-based `a`, `b`).
pub fn gl_derivation(alg: &CommDgAlgebra, a: usize, b: usize, f: &CommElement) -> Result<CommElement> {
    let n = matrix_info(alg)?.n;
    if a == 0 || b == 0 || a > n || b > n {
        return Err(Error::IndexOutOfRange(format!(
            "({a}, {b}) is outside 1..={n}"
        )));
    }
    let (a0, b0) = (a - 1, b - 1);
    let vars = alg.vars();
    Ok(alg.apply_even_derivation(f, |v| {
        let o = vars[v].origin.expect("matrix variable");
        let (g, i, j) = (o.gen as usize, o.row as usize - 1, o.col as usize - 1);
        let mut img = CommElement::zero();
        if j == b0 {
            img = &img + &alg.var(var_pos(n, g, i, a0));
        }
        if i == a0 {
            img = &img - &alg.var(var_pos(n, g, b0, j));
        }
        img
    }))
}

/// Infinitesimal GL-invariance: every `gl_derivation(a, b, f)` vanishes.
pub fn is_gl_invariant(alg: &CommDgAlgebra, f: &CommElement) -> Result<bool> {
    let n = matrix_info(alg)?.n;
    for a in 1..=n {
        for b in 1..=n {
            if !gl_derivation(alg, a, b, f)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `sum_i M[i][i]`.
pub fn trace_of(m: &ElemMatrix) -> CommElement {
    let mut s = CommElement::zero();
    for (i, row) in m.iter().enumerate() {
        s = &s + &row[i];
    }
    s
}

/// Scalar multiple of the identity's trace, i.e. `c * n`.
pub fn scalar_trace(n: usize, c: &BigRational) -> CommElement {
    CommElement::scalar(c * BigRational::from_integer((n as i64).into()))
}
