//! JSON manifold spec files and the built-in specs.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::contact::ContactStructure;
use crate::expr::{parse_rational, Chart, Expr, Rational};
use crate::geometry::{FrameManifold, VectorField};
use crate::tensor::{FrameVector, Tensor02, Tensor11};

/// A manifold spec as written on disk. Every expression is a string in the
/// expression grammar over `coordinates`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpecFile {
    pub name: String,
    pub dimension: usize,
    pub coordinates: Vec<String>,
    /// Expressions that stay nonzero on the domain.
    #[serde(default)]
    pub domain_constraints: Vec<String>,
    /// Row `i` holds the coordinate components of `eᵢ`.
    pub frame: Vec<Vec<String>>,
    /// `g(eᵢ, eⱼ)`; the identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    /// Row `i` holds the frame components of `φeᵢ`.
    pub phi: Vec<Vec<String>>,
    /// Frame components of `ξ`.
    pub xi: Vec<String>,
    /// Frame components of a potential field, or `"xi"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential_field: Option<PotentialSpec>,
    /// `[a, b]` as rational strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasi_conformal: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialSpec {
    Named(String),
    Components(Vec<String>),
}

/// A spec error located by a field path such as `frame[1][2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl SpecError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        SpecError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SpecError {}

/// A spec turned into geometry.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub name: String,
    pub manifold: FrameManifold,
    pub contact: ContactStructure,
    pub potential: Option<FrameVector>,
    pub quasi_conformal: Option<(Rational, Rational)>,
    /// Defaults applied while loading.
    pub notes: Vec<String>,
}

pub const BUILTIN_NAMES: &[&str] = &["paper-example", "flat-example"];

fn strings(row: &[&str]) -> Vec<String> {
    row.iter().map(|s| s.to_string()).collect()
}

fn matrix(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| strings(r)).collect()
}

const PHI_3: &[&[&str]] = &[&["0", "-1", "0"], &["1", "0", "0"], &["0", "0", "0"]];

impl ManifoldSpecFile {
    /// `paper-example` (alias `kenmotsu-example`) or `flat-example`.
    pub fn builtin(name: &str) -> Option<Self> {
        let (name, constraints, frame): (&str, &[&str], &[&[&str]]) = match name {
            "paper-example" | "kenmotsu-example" => (
                "paper-example",
                &["z"],
                &[&["z", "0", "0"], &["0", "z", "0"], &["0", "0", "z"]],
            ),
            "flat-example" => (
                "flat-example",
                &[],
                &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
            ),
            _ => return None,
        };
        Some(ManifoldSpecFile {
            name: name.to_string(),
            dimension: 3,
            coordinates: strings(&["x", "y", "z"]),
            domain_constraints: strings(constraints),
            frame: matrix(frame),
            metric: Some(matrix(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]])),
            phi: matrix(PHI_3),
            xi: strings(&["0", "0", "1"]),
            potential_field: None,
            quasi_conformal: None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::at("$", e))
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError::at(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    /// A built-in name, else a path.
    pub fn resolve(target: &str) -> Result<Self, SpecError> {
        match Self::builtin(target) {
            Some(s) => Ok(s),
            None => Self::load(Path::new(target)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn build(&self) -> Result<LoadedSpec, SpecError> {
        let n = self.dimension;
        if self.coordinates.len() != n {
            return Err(SpecError::at(
                "coordinates",
                format!("{} names for dimension {n}", self.coordinates.len()),
            ));
        }
        let mut chart = Chart::new(&self.coordinates).map_err(|e| SpecError::at("coordinates", e))?;
        for (i, c) in self.domain_constraints.iter().enumerate() {
            let path = format!("domain_constraints[{i}]");
            let e = chart.parse(c).map_err(|e| SpecError::at(&path, e))?;
            chart = chart.with_constraint(e).map_err(|e| SpecError::at(&path, e))?;
        }
        let mut notes = Vec::new();
        let frame = parse_matrix(&chart, &self.frame, "frame")?
            .into_iter()
            .map(VectorField)
            .collect();
        let metric = match &self.metric {
            Some(rows) => {
                let g = parse_matrix(&chart, rows, "metric")?;
                Tensor02::from_fn(n, |i, j| g[i][j].clone())
            }
            None => {
                notes.push("metric not given; the frame is taken to be orthonormal".to_string());
                Tensor02::identity(n)
            }
        };
        let manifold = FrameManifold::new(chart, frame, metric).map_err(|e| SpecError::at("frame", e))?;
        let chart = manifold.chart();
        let phi: Vec<FrameVector> = parse_matrix(chart, &self.phi, "phi")?
            .into_iter()
            .map(FrameVector)
            .collect();
        let xi = FrameVector(parse_row(chart, &self.xi, n, "xi")?);
        let contact = ContactStructure::metric_dual(&manifold, Tensor11::from_images(&phi), xi)
            .map_err(|e| SpecError::at("xi", e))?;
        let potential = match &self.potential_field {
            None => None,
            Some(PotentialSpec::Named(name)) => Some(
                named_potential(&contact, name).ok_or_else(|| SpecError::at("potential_field", unknown_potential(name)))?,
            ),
            Some(PotentialSpec::Components(row)) => Some(FrameVector(parse_row(chart, row, n, "potential_field")?)),
        };
        let quasi_conformal = match &self.quasi_conformal {
            None => None,
            Some([a, b]) => Some((
                parse_rational(a).ok_or_else(|| SpecError::at("quasi_conformal[0]", format!("`{a}` is not a rational")))?,
                parse_rational(b).ok_or_else(|| SpecError::at("quasi_conformal[1]", format!("`{b}` is not a rational")))?,
            )),
        };
        Ok(LoadedSpec {
            name: self.name.clone(),
            manifold,
            contact,
            potential,
            quasi_conformal,
            notes,
        })
    }
}

fn unknown_potential(name: &str) -> String {
    format!("unknown potential field `{name}`; use `xi` or a list of frame components")
}

fn named_potential(c: &ContactStructure, name: &str) -> Option<FrameVector> {
    match name {
        "xi" | "reeb" => Some(c.xi().clone()),
        _ => None,
    }
}

fn parse_row(chart: &Chart, row: &[String], n: usize, path: &str) -> Result<Vec<Expr>, SpecError> {
    if row.len() != n {
        return Err(SpecError::at(path, format!("expected {n} entries, got {}", row.len())));
    }
    row.iter()
        .enumerate()
        .map(|(j, s)| chart.parse(s).map_err(|e| SpecError::at(format!("{path}[{j}]"), format!("`{s}`: {e}"))))
        .collect()
}

fn parse_matrix(chart: &Chart, rows: &[Vec<String>], path: &str) -> Result<Vec<Vec<Expr>>, SpecError> {
    let n = chart.dim();
    if rows.len() != n {
        return Err(SpecError::at(path, format!("expected {n} rows, got {}", rows.len())));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| parse_row(chart, r, n, &format!("{path}[{i}]")))
        .collect()
}

/// Parses a `--potential-field` value: `xi`, or comma-separated frame components.
pub fn parse_potential(loaded: &LoadedSpec, text: &str) -> Result<FrameVector, SpecError> {
    if let Some(v) = named_potential(&loaded.contact, text.trim()) {
        return Ok(v);
    }
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() == 1 {
        return Err(SpecError::at("--potential-field", unknown_potential(&parts[0])));
    }
    let chart = loaded.manifold.chart();
    Ok(FrameVector(parse_row(chart, &parts, chart.dim(), "--potential-field")?))
}

/// Parses `a,b` for the quasi-conformal coefficients.
pub fn parse_coefficients(text: &str) -> Result<(Rational, Rational), SpecError> {
    let path = "--quasi-conformal";
    let mut parts = text.split(',').map(str::trim);
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(SpecError::at(path, format!("expected `a,b`, got `{text}`")));
    };
    let parse = |s: &str| parse_rational(s).ok_or_else(|| SpecError::at(path, format!("`{s}` is not a rational")));
    Ok((parse(a)?, parse(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::FrameManifold;

    fn same_geometry(a: &FrameManifold, b: &FrameManifold) {
        assert_eq!(a.chart(), b.chart());
        assert_eq!(a.frame(), b.frame());
        assert_eq!(a.metric(), b.metric());
    }

    #[test]
    fn builtins_match_fixtures() {
        for (name, f) in [
            ("paper-example", fixtures::kenmotsu_example()),
            ("kenmotsu-example", fixtures::kenmotsu_example()),
            ("flat-example", fixtures::flat_example()),
        ] {
            let s = ManifoldSpecFile::builtin(name).unwrap().build().unwrap();
            same_geometry(&s.manifold, &f.manifold);
            assert_eq!(s.contact, f.contact);
            assert!(s.notes.is_empty());
        }
    }

    #[test]
    fn json_round_trip() {
        let spec = ManifoldSpecFile::builtin("paper-example").unwrap();
        assert_eq!(ManifoldSpecFile::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn metric_dimension_mismatch_is_located() {
        let mut spec = ManifoldSpecFile::builtin("paper-example").unwrap();
        spec.metric = Some(matrix(&[&["1", "0"], &["0", "1"]]));
        let err = spec.build().unwrap_err();
        assert_eq!(err.path, "metric");
        assert!(err.message.contains("expected 3 rows, got 2"));
    }

    #[test]
    fn omitted_metric_defaults_to_identity_with_note() {
        let mut spec = ManifoldSpecFile::builtin("paper-example").unwrap();
        spec.metric = None;
        let s = spec.build().unwrap();
        assert_eq!(s.manifold.metric(), &Tensor02::identity(3));
        assert_eq!(s.notes.len(), 1);
    }

    #[test]
    fn parse_errors_carry_paths() {
        let mut spec = ManifoldSpecFile::builtin("paper-example").unwrap();
        spec.frame[1][2] = "z +* 1".to_string();
        assert_eq!(spec.build().unwrap_err().path, "frame[1][2]");
        let mut spec = ManifoldSpecFile::builtin("paper-example").unwrap();
        spec.xi[0] = "w".to_string();
        let err = spec.build().unwrap_err();
        assert_eq!(err.path, "xi[0]");
        assert!(err.message.contains("unknown identifier `w`"));
    }

    #[test]
    fn missing_field_is_reported() {
        let err = ManifoldSpecFile::from_json(r#"{"name": "m", "dimension": 3}"#).unwrap_err();
        assert!(err.message.contains("missing field"), "{err}");
    }

    #[test]
    fn potential_and_coefficient_flags() {
        let s = ManifoldSpecFile::builtin("paper-example").unwrap().build().unwrap();
        assert_eq!(parse_potential(&s, "xi").unwrap(), s.contact.xi().clone());
        let v = parse_potential(&s, "0, 0, z").unwrap();
        assert_eq!(v.components()[2], s.manifold.chart().coord(2));
        assert!(parse_potential(&s, "zeta").is_err());
        assert!(parse_potential(&s, "0,0").is_err());
        let (a, b) = parse_coefficients("1,-1").unwrap();
        assert_eq!((a, b), (Rational::from_integer(1.into()), Rational::from_integer((-1).into())));
        assert!(parse_coefficients("1").is_err());
        assert!(parse_coefficients("1,x").is_err());
    }
}
