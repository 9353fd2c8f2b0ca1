use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::asymptotic::{monomial_prime_candidates, PrimeCertificate, PrimeIdeal};
use crate::error::{AlgebraError, Result};
use crate::field_poly::{parse_polynomial, FreeElement, Polynomial, Ring};
use crate::graded_ring::{verify_regular_sequence, IdealPowerCache, ModulePresentation, RegularityCertificate, RingPresentation};
use crate::resolution::default_length;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixSpec {
    pub shifts: Vec<i32>,
    /// Relation columns; entry `r` of a column multiplies generator `r`.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CandidateSpec {
    pub label: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CandidatesSpec {
    Keyword(String),
    List(Vec<CandidateSpec>),
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct WindowSpec {
    pub imax: Option<usize>,
    pub nmax: Option<usize>,
    pub jmax: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StabilizationSpec {
    pub i0: usize,
    pub n0: usize,
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

/// Expected values a run is compared against.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    /// `ass_grid[i][n]`.
    pub ass_grid: Option<Vec<Vec<Vec<String>>>>,
    pub union: Option<Vec<String>>,
    pub stabilization: Option<StabilizationSpec>,
    /// `cx` for `j = 0..=jmax`.
    pub cx: Option<Vec<usize>>,
    pub j_star: Option<usize>,
    /// Leading Betti numbers `b_0, b_1, ...`.
    pub betti: Option<Vec<usize>>,
}

/// The on-disk fixture format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub name: String,
    pub prime: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
    pub f: Vec<String>,
    #[serde(rename = "M")]
    pub m: MatrixSpec,
    #[serde(rename = "N")]
    pub n: MatrixSpec,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    #[serde(default)]
    pub candidates: Option<CandidatesSpec>,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default)]
    pub resolution_length: Option<usize>,
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
}

/// A parsed and validated fixture.
#[derive(Debug)]
pub struct Fixture {
    pub name: String,
    pub path: Option<PathBuf>,
    pub ring: Arc<RingPresentation>,
    pub regularity: RegularityCertificate,
    pub m: ModulePresentation,
    pub n: ModulePresentation,
    pub ideal: Vec<Polynomial>,
    pub candidates: Vec<PrimeIdeal>,
    pub window: WindowSpec,
    pub resolution_length: usize,
    pub oracle: Option<OracleSpec>,
}

fn parse_in(s: &str, ring: &Ring, context: &str) -> Result<Polynomial> {
    parse_polynomial(s, ring).map_err(|e| match e {
        AlgebraError::Parse { line, column, message } => AlgebraError::Parse {
            line,
            column,
            message: format!("{context}: {message}"),
        },
        other => other,
    })
}

fn homogeneous(p: Polynomial, ring: &Ring, context: &str) -> Result<Polynomial> {
    if p.is_homogeneous() {
        Ok(p)
    } else {
        Err(AlgebraError::Validation(format!(
            "{context}: {} is not homogeneous",
            p.display(ring)
        )))
    }
}

fn module(ring: &Arc<RingPresentation>, spec: &MatrixSpec, which: &str) -> Result<ModulePresentation> {
    let q = ring.ring();
    let g = spec.shifts.len();
    let mut rels = Vec::new();
    for (c, col) in spec.relations.iter().enumerate() {
        if col.len() != g {
            return Err(AlgebraError::Validation(format!(
                "{which}: relation {c} has {} entries for {g} generators",
                col.len()
            )));
        }
        let entries = col
            .iter()
            .enumerate()
            .map(|(r, s)| parse_in(s, q, &format!("{which} relation {c} entry {r}")))
            .collect::<Result<Vec<_>>>()?;
        let v = FreeElement::from_column(&entries, q.field());
        if !v.is_homogeneous(&spec.shifts) {
            return Err(AlgebraError::Validation(format!(
                "{which}: relation {c} is not homogeneous for shifts {:?}",
                spec.shifts
            )));
        }
        rels.push(v);
    }
    ModulePresentation::new(ring.clone(), spec.shifts.clone(), rels)
}

impl FixtureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Parses every polynomial and checks the named invariants.
    pub fn build(&self) -> Result<Fixture> {
        let weights = self.degrees.clone().unwrap_or_else(|| vec![1; self.variables.len()]);
        let q = Arc::new(Ring::with_weights(self.prime, self.variables.clone(), weights)?);
        let f = self
            .f
            .iter()
            .enumerate()
            .map(|(j, s)| parse_in(s, &q, &format!("f[{j}]")).and_then(|p| homogeneous(p, &q, &format!("f[{j}]"))))
            .collect::<Result<Vec<_>>>()?;
        let regularity = verify_regular_sequence(&q, &f)?;
        let ring = Arc::new(RingPresentation::from_arc(q.clone(), f)?);
        let m = module(&ring, &self.m, "M")?;
        let n = module(&ring, &self.n, "N")?;
        let ideal = self
            .i
            .iter()
            .enumerate()
            .map(|(j, s)| parse_in(s, &q, &format!("I[{j}]")).and_then(|p| homogeneous(p, &q, &format!("I[{j}]"))))
            .collect::<Result<Vec<_>>>()?;
        let candidates = match &self.candidates {
            None => monomial_prime_candidates(&ring),
            Some(CandidatesSpec::Keyword(k)) if k == "monomial" => monomial_prime_candidates(&ring),
            Some(CandidatesSpec::Keyword(k)) => {
                return Err(AlgebraError::Validation(format!("unknown candidates keyword {k:?}")))
            }
            Some(CandidatesSpec::List(list)) => list
                .iter()
                .map(|c| {
                    let generators = c
                        .generators
                        .iter()
                        .map(|s| parse_in(s, &q, &format!("candidate {}", c.label)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(PrimeIdeal {
                        generators,
                        label: c.label.clone(),
                        certificate: PrimeCertificate::FixtureAsserted,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let resolution_length = self.resolution_length.unwrap_or_else(|| default_length(ring.codim()));
        if resolution_length == 0 {
            return Err(AlgebraError::Validation("resolution_length must be positive".into()));
        }
        if let Some(imax) = self.window.imax {
            if imax + 1 > resolution_length {
                return Err(AlgebraError::Validation(format!(
                    "window imax {imax} exceeds resolution length {resolution_length}"
                )));
            }
        }
        Ok(Fixture {
            name: self.name.clone(),
            path: None,
            ring,
            regularity,
            m,
            n,
            ideal,
            candidates,
            window: self.window,
            resolution_length,
            oracle: self.oracle.clone(),
        })
    }
}

impl Fixture {
    pub fn powers(&self) -> Result<IdealPowerCache> {
        IdealPowerCache::new(self.ring.clone(), self.ideal.clone())
    }
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = fs::read_to_string(path)
        .map_err(|e| AlgebraError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let mut fx = FixtureFile::from_json(&text)?.build()?;
    fx.path = Some(path.to_path_buf());
    Ok(fx)
}

/// A fixture file, or every `*.json` directly inside a directory, sorted by name.
pub fn fixture_paths(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut out: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| AlgebraError::Validation(format!("cannot read {}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    } else if path.is_file() {
        Ok(vec![path.to_path_buf()])
    } else {
        Err(AlgebraError::Validation(format!("no fixture at {}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "name": "t", "prime": 5, "variables": ["x", "y"], "f": ["x^2"],
        "M": {"shifts": [0], "relations": [["x"], ["y"]]},
        "N": {"shifts": [0]}, "I": ["y"]
    }"#;

    #[test]
    fn builds() {
        let fx = FixtureFile::from_json(BASE).unwrap().build().unwrap();
        assert_eq!(fx.resolution_length, 8);
        assert_eq!(fx.regularity.dimensions, vec![2, 1]);
        assert_eq!(fx.candidates.len(), 2);
    }

    #[test]
    fn rejects_non_regular() {
        let text = BASE.replace(r#""f": ["x^2"]"#, r#""f": ["x^2", "x^3"]"#);
        let err = FixtureFile::from_json(&text).unwrap().build().unwrap_err();
        assert!(matches!(err, AlgebraError::NotRegular(_)));
        assert!(err.to_string().contains("not a regular sequence"));
    }

    #[test]
    fn rejects_undeclared_variable() {
        let text = BASE.replace(r#""I": ["y"]"#, r#""I": ["z"]"#);
        let err = FixtureFile::from_json(&text).unwrap().build().unwrap_err();
        assert!(matches!(err, AlgebraError::Parse { column: 1, .. }));
    }

    #[test]
    fn rejects_bad_json() {
        assert!(matches!(
            FixtureFile::from_json("{\"name\": 3"),
            Err(AlgebraError::Parse { .. })
        ));
    }
}
