//! Traces of products of generic matrices.
//!
//! The matrices have graded-commutative entries and act on a space in degree
//! 0, so the ordinary trace is a supertrace:
//! `Tr(AB) = (-1)^{|A||B|} Tr(BA)`.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::commdga::{CommDgAlgebra, CommElement};
use crate::matrixify::{scalar_trace, trace_of, word_matrix};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixWord {
    pub letters: Vec<String>,
    /// Evaluate at the least rotation, with the rotation's sign.
    #[serde(default)]
    pub cyclic: bool,
}

impl MatrixWord {
    pub fn new<S: AsRef<str>>(letters: &[S]) -> Self {
        Self {
            letters: letters.iter().map(|s| s.as_ref().to_string()).collect(),
            cyclic: false,
        }
    }

    pub fn cyclic<S: AsRef<str>>(letters: &[S]) -> Self {
        Self {
            cyclic: true,
            ..Self::new(letters)
        }
    }

    /// Whitespace- or `*`-separated letters.
    pub fn parse(text: &str) -> Self {
        let letters: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()).collect();
        Self::new(&letters)
    }
}

fn generator_hdeg(alg: &CommDgAlgebra, name: &str) -> Result<u32> {
    let info = alg
        .matrix_info()
        .ok_or_else(|| Error::Unsupported("algebra was not produced by matrixification".into()))?;
    info.gens
        .iter()
        .find(|g| g.name == name)
        .map(|g| g.hdeg)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

/// Least rotation of `letters` (by generator order) and the supertrace sign
/// of moving the cut prefix to the back.
fn least_rotation(alg: &CommDgAlgebra, letters: &[String]) -> Result<(Vec<String>, bool)> {
    let info = alg.matrix_info().expect("checked by caller");
    let key: Vec<usize> = letters
        .iter()
        .map(|l| info.gens.iter().position(|g| &g.name == l).expect("checked by caller"))
        .collect();
    let k = key.len();
    let r = (0..k)
        .min_by_key(|&r| key[r..].iter().chain(&key[..r]).copied().collect::<Vec<_>>())
        .unwrap_or(0);
    let hd = |s: &[String]| -> Result<u32> { s.iter().map(|l| generator_hdeg(alg, l)).sum() };
    let negative = hd(&letters[..r])? % 2 == 1 && hd(&letters[r..])? % 2 == 1;
    let mut rotated = letters[r..].to_vec();
    rotated.extend_from_slice(&letters[..r]);
    Ok((rotated, negative))
}

/// `Tr` of the product of the generator matrices of `w`.
pub fn trace_word(alg: &CommDgAlgebra, w: &MatrixWord) -> Result<CommElement> {
    if w.letters.is_empty() {
        return Err(Error::InvalidData("a matrix word needs at least one letter".into()));
    }
    for l in &w.letters {
        generator_hdeg(alg, l)?;
    }
    let (letters, negative) = if w.cyclic {
        least_rotation(alg, &w.letters)?
    } else {
        (w.letters.clone(), false)
    };
    let names: Vec<&str> = letters.iter().map(String::as_str).collect();
    let t = trace_of(&word_matrix(alg, &names)?);
    Ok(if negative { -&t } else { t })
}

/// Degree-0 trace of a cyclic word; the empty word gives `n`.
pub fn tr0<S: AsRef<str>>(alg: &CommDgAlgebra, letters: &[S]) -> Result<CommElement> {
    let info = alg
        .matrix_info()
        .ok_or_else(|| Error::Unsupported("algebra was not produced by matrixification".into()))?;
    for l in letters {
        if generator_hdeg(alg, l.as_ref())? != 0 {
            return Err(Error::InvalidData(format!(
                "`{}` is not of homological degree 0",
                l.as_ref()
            )));
        }
    }
    if letters.is_empty() {
        return Ok(scalar_trace(info.n, &BigRational::one()));
    }
    trace_word(alg, &MatrixWord::cyclic(letters))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Differential {
    Dx,
    Dy,
}

impl std::str::FromStr for Differential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dx" => Ok(Differential::Dx),
            "dy" => Ok(Differential::Dy),
            other => Err(Error::BadParams(format!("expected dx or dy, got `{other}`"))),
        }
    }
}

fn power(letter: &str, k: usize) -> impl Iterator<Item = &str> {
    std::iter::repeat(letter).take(k)
}

/// Degree-1 trace of `x^l y^m dx` or `x^l y^m dy` for the resolution of
/// `k[x, y]` with `dt = xy - yx`:
/// `x^l y^m dx -> sum_{i<m} Tr(X^l Y^i T Y^{m-1-i})`,
/// `x^l y^m dy -> -sum_{j<l} Tr(X^j T X^{l-1-j} Y^m)`.
pub fn tr1_kxy(alg: &CommDgAlgebra, l: usize, m: usize, which: Differential) -> Result<CommElement> {
    for g in ["x", "y", "t"] {
        generator_hdeg(alg, g)?;
    }
    let mut sum = CommElement::zero();
    let words: Vec<Vec<&str>> = match which {
        Differential::Dx => (0..m)
            .map(|i| {
                power("x", l)
                    .chain(power("y", i))
                    .chain(["t"])
                    .chain(power("y", m - 1 - i))
                    .collect()
            })
            .collect(),
        Differential::Dy => (0..l)
            .map(|j| {
                power("x", j)
                    .chain(["t"])
                    .chain(power("x", l - 1 - j))
                    .chain(power("y", m))
                    .collect()
            })
            .collect(),
    };
    for w in words {
        sum = &sum + &trace_word(alg, &MatrixWord::new(&w))?;
    }
    Ok(match which {
        Differential::Dx => sum,
        Differential::Dy => -&sum,
    })
}
