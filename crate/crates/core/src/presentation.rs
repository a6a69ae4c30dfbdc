//! Semi-free DG algebra presentations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ncpoly::{nc_diff, parse_nc, GeneratorInfo, GeneratorSet, NcPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The differential preserves weight.
    Graded,
    /// The differential does not increase weight.
    Filtered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Graded => "graded",
            Mode::Filtered => "filtered",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graded" => Ok(Mode::Graded),
            "filtered" => Ok(Mode::Filtered),
            other => Err(Error::Schema(format!("unknown mode `{other}`"))),
        }
    }
}

/// A semi-free DG algebra: a free algebra on graded generators with a
/// differential given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgPresentation {
    pub name: String,
    pub gens: GeneratorSet,
    /// `diff[i]` is the differential of generator `i`.
    pub diff: Vec<NcPoly>,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    DegreeRule,
    DegreeZeroDifferential,
    WeightIncrease,
    ModeMismatch,
    DSquared,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub kind: IssueKind,
    pub generator: String,
    pub term: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub valid: bool,
    pub declared_mode: Mode,
    /// Strictest mode satisfied by the differential, if any.
    pub derived_mode: Option<Mode>,
    pub issues: Vec<ValidationIssue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let derived = self
            .derived_mode
            .map(|m| m.to_string())
            .unwrap_or_else(|| "none".into());
        writeln!(
            f,
            "{}: {} (declared mode {}, derived mode {})",
            self.name,
            if self.valid { "valid" } else { "INVALID" },
            self.declared_mode,
            derived
        )?;
        for i in &self.issues {
            write!(f, "  [{:?}] {}: {}", i.kind, i.generator, i.message)?;
            if let Some(t) = &i.term {
                write!(f, " (term `{t}`)")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl DgPresentation {
    /// Builds a presentation; generators absent from `diff` get zero differential.
    pub fn new(
        name: impl Into<String>,
        gens: Vec<GeneratorInfo>,
        diff: &[(&str, &str)],
        mode: Mode,
    ) -> Result<Self> {
        let gens = GeneratorSet::new(gens)?;
        let mut d = vec![NcPoly::zero(); gens.len()];
        for (g, expr) in diff {
            let i = gens
                .lookup(g)
                .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            d[i as usize] = parse_nc(expr, &gens)?;
        }
        Ok(Self {
            name: name.into(),
            gens,
            diff: d,
            mode,
        })
    }

    pub fn from_parts(name: impl Into<String>, gens: GeneratorSet, diff: Vec<NcPoly>, mode: Mode) -> Self {
        assert_eq!(gens.len(), diff.len());
        Self {
            name: name.into(),
            gens,
            diff,
            mode,
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.gens.infos().iter().map(|g| g.weight).max().unwrap_or(0)
    }

    /// The differential applied to an arbitrary element.
    pub fn d(&self, p: &NcPoly) -> Result<NcPoly> {
        nc_diff(
            p,
            |g| self.diff.get(g as usize),
            |g| self.gens.get(g).hdeg,
            |g| self.gens.get(g).name.clone(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Fails with [`Error::InvalidPresentation`] unless validation passes.
    pub fn ensure_valid(&self) -> Result<ValidationReport> {
        let r = self.validate();
        if r.valid {
            Ok(r)
        } else {
            let summary = r
                .issues
                .iter()
                .map(|i| format!("{}: {}", i.generator, i.message))
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::InvalidPresentation {
                name: self.name.clone(),
                summary,
            })
        }
    }

    pub fn to_json(&self) -> PresentationJson {
        let differential = self
            .gens
            .infos()
            .iter()
            .zip(&self.diff)
            .filter(|(_, d)| !d.is_zero())
            .map(|(g, d)| (g.name.clone(), d.to_string_with(&self.gens)))
            .collect();
        PresentationJson {
            name: self.name.clone(),
            mode: self.mode,
            generators: self.gens.infos().to_vec(),
            differential,
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let gens = GeneratorSet::new(j.generators.clone())?;
        let mut d = vec![NcPoly::zero(); gens.len()];
        for (g, expr) in &j.differential {
            let i = gens.lookup(g).ok_or_else(|| {
                Error::Schema(format!("differential given for unknown generator `{g}`"))
            })?;
            d[i as usize] = parse_nc(expr, &gens)?;
        }
        Ok(Self {
            name: j.name.clone(),
            gens,
            diff: d,
            mode: j.mode,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PresentationJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// SHA-256 over the compact canonical JSON form.
    pub fn content_hash(&self) -> String {
        let canon = serde_json::to_string(&self.to_json()).expect("serializable");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }

    pub fn truncate_by_weight(&self, max_weight: u32) -> Result<Self> {
        truncate_by_weight(self, max_weight)
    }
}

/// On-disk presentation schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub name: String,
    pub mode: Mode,
    pub generators: Vec<GeneratorInfo>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
}

pub fn validate(pres: &DgPresentation) -> ValidationReport {
    let gens = &pres.gens;
    let mut issues = Vec::new();
    let mut graded = true;
    let mut filtered = true;
    for (i, g) in gens.infos().iter().enumerate() {
        let d = &pres.diff[i];
        if g.hdeg == 0 && !d.is_zero() {
            issues.push(ValidationIssue {
                kind: IssueKind::DegreeZeroDifferential,
                generator: g.name.clone(),
                term: None,
                message: "generators of homological degree 0 must have zero differential".into(),
            });
        }
        for (w, _) in d.terms() {
            let term = Some(gens.word_string(w));
            let h = gens.word_hdeg(w);
            if g.hdeg > 0 && h + 1 != g.hdeg {
                issues.push(ValidationIssue {
                    kind: IssueKind::DegreeRule,
                    generator: g.name.clone(),
                    term: term.clone(),
                    message: format!("term has homological degree {h}, expected {}", g.hdeg - 1),
                });
            }
            let wt = gens.word_weight(w);
            if wt != g.weight {
                graded = false;
            }
            if wt > g.weight {
                filtered = false;
                issues.push(ValidationIssue {
                    kind: IssueKind::WeightIncrease,
                    generator: g.name.clone(),
                    term,
                    message: format!("term has weight {wt} > generator weight {}", g.weight),
                });
            }
        }
    }
    let derived_mode = if graded {
        Some(Mode::Graded)
    } else if filtered {
        Some(Mode::Filtered)
    } else {
        None
    };
    if let Some(m) = derived_mode {
        if m != pres.mode {
            issues.push(ValidationIssue {
                kind: IssueKind::ModeMismatch,
                generator: pres.name.clone(),
                term: None,
                message: format!("declared mode {} but the differential is {m}", pres.mode),
            });
        }
    }
    for (i, g) in gens.infos().iter().enumerate() {
        if g.hdeg == 0 {
            continue;
        }
        match pres.d(&pres.diff[i]) {
            Ok(dd) if dd.is_zero() => {}
            Ok(dd) => issues.push(ValidationIssue {
                kind: IssueKind::DSquared,
                generator: g.name.clone(),
                term: Some(dd.to_string_with(gens)),
                message: "d(d(g)) is nonzero".into(),
            }),
            Err(e) => issues.push(ValidationIssue {
                kind: IssueKind::DSquared,
                generator: g.name.clone(),
                term: None,
                message: e.to_string(),
            }),
        }
    }
    ValidationReport {
        name: pres.name.clone(),
        valid: issues.is_empty(),
        declared_mode: pres.mode,
        derived_mode,
        issues,
    }
}

/// Drops every generator of weight greater than `max_weight`.
pub fn truncate_by_weight(pres: &DgPresentation, max_weight: u32) -> Result<DgPresentation> {
    pres.ensure_valid()?;
    let mut map = vec![None; pres.gens.len()];
    let mut kept = Vec::new();
    for (i, g) in pres.gens.infos().iter().enumerate() {
        if g.weight <= max_weight {
            map[i] = Some(kept.len() as u32);
            kept.push(i);
        }
    }
    let gens = GeneratorSet::new(kept.iter().map(|&i| pres.gens.infos()[i].clone()).collect())?;
    let mut diff = Vec::with_capacity(kept.len());
    for &i in &kept {
        let d = &pres.diff[i];
        let mut nd = NcPoly::zero();
        for (w, c) in d.terms() {
            match w.iter().map(|&g| map[g as usize]).collect::<Option<Vec<u32>>>() {
                Some(nw) => nd.add_term(nw, c.clone()),
                None if pres.mode == Mode::Graded => {}
                None => {
                    return Err(Error::Internal(format!(
                        "differential of `{}` mentions a generator of weight > {max_weight}",
                        pres.gens.infos()[i].name
                    )))
                }
            }
        }
        diff.push(nd);
    }
    Ok(DgPresentation {
        name: pres.name.clone(),
        gens,
        diff,
        mode: pres.mode,
    })
}
