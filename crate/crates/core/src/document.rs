//! Plain-text fan documents.
//!
//! A document is a small TOML file:
//!
//! ```toml
//! name = "CP2"
//! dim = 2
//! rays = [[1, 0], [0, 1], [-1, -1]]
//! max_cones = [[0, 1], [0, 2], [1, 2]]
//! ```
//!
//! `name` is optional. Rays are integer lists of length `dim`; they are made
//! primitive on ingestion. Cone entries are ray indices starting at 0.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;

use crate::fan::{Fan, FanError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("ParseError: {0}")]
    Parse(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    name: Option<String>,
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanDocument {
    pub name: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanDocument {
    /// Parses and checks that rays have length `dim` and cone indices refer
    /// to rays. Geometric problems are left to [`FanDocument::to_fan`].
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = toml::from_str(text)
            .map_err(|e| DocumentError::Parse(e.to_string().trim().to_string()))?;
        for (i, r) in raw.rays.iter().enumerate() {
            if r.len() != raw.dim {
                return Err(DocumentError::Parse(format!(
                    "field rays[{i}]: expected {} entries, found {}",
                    raw.dim,
                    r.len()
                )));
            }
        }
        for (c, cone) in raw.max_cones.iter().enumerate() {
            if let Some((k, idx)) = cone.iter().enumerate().find(|(_, &i)| i >= raw.rays.len()) {
                return Err(DocumentError::Parse(format!(
                    "field max_cones[{c}][{k}]: ray index {idx} out of range ({} rays)",
                    raw.rays.len()
                )));
            }
        }
        Ok(FanDocument {
            name: raw.name,
            dim: raw.dim,
            rays: raw
                .rays
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
            max_cones: raw.max_cones,
        })
    }

    pub fn from_fan(fan: &Fan, name: Option<String>) -> Self {
        FanDocument {
            name,
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            max_cones: fan.max_cones().to_vec(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, FanError> {
        Fan::normalized(self.dim, self.rays.clone(), self.max_cones.clone())
    }

    /// Canonical text: one key per line, cones with sorted indices.
    pub fn to_toml_string(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            writeln!(out, "name = {}", toml::Value::String(name.clone())).unwrap();
        }
        writeln!(out, "dim = {}", self.dim).unwrap();
        let rays: Vec<String> = self.rays.iter().map(|r| list(r)).collect();
        writeln!(out, "rays = [{}]", rays.join(", ")).unwrap();
        let cones: Vec<String> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                list(&c)
            })
            .collect();
        writeln!(out, "max_cones = [{}]", cones.join(", ")).unwrap();
        out
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{hirzebruch, projective_space};

    const CP2: &str = "name = \"CP2\"\ndim = 2\nrays = [[1, 0], [0, 1], [-1, -1]]\nmax_cones = [[0, 1], [0, 2], [1, 2]]\n";

    #[test]
    fn parses_and_prints_canonically() {
        let doc = FanDocument::parse(CP2).unwrap();
        assert_eq!(doc.name.as_deref(), Some("CP2"));
        assert_eq!(doc.to_toml_string(), CP2);
        assert_eq!(doc.to_fan().unwrap(), projective_space(2).unwrap());
    }

    #[test]
    fn canonical_form_sorts_cone_indices() {
        let text =
            "dim = 2\nrays = [[1, 0], [0, 1], [-1, -1]]\nmax_cones = [[1, 0], [2, 0], [2, 1]]\n";
        let doc = FanDocument::parse(text).unwrap();
        assert!(doc
            .to_toml_string()
            .ends_with("max_cones = [[0, 1], [0, 2], [1, 2]]\n"));
    }

    #[test]
    fn generated_documents_round_trip() {
        let doc = FanDocument::from_fan(&hirzebruch(3), Some("H3 \"quoted\"".into()));
        let text = doc.to_toml_string();
        assert_eq!(FanDocument::parse(&text).unwrap(), doc);
    }

    #[test]
    fn parse_errors_name_the_problem() {
        let err = FanDocument::parse("dim = 2\nrays = [[1, 0], [0").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        let err =
            FanDocument::parse("dim = 2\nrays = [[1, 0, 0]]\nmax_cones = [[0]]\n").unwrap_err();
        assert!(err.to_string().contains("rays[0]"));
        let err =
            FanDocument::parse("dim = 2\nrays = [[1, 0]]\nmax_cones = [[0, 4]]\n").unwrap_err();
        assert!(err.to_string().contains("max_cones[0][1]"));
        let err = FanDocument::parse("dim = 2\nrays = [[1, 0]]\n").unwrap_err();
        assert!(err.to_string().contains("max_cones"));
        assert!(FanDocument::parse("dim = -1\nrays = []\nmax_cones = []\n").is_err());
    }

    #[test]
    fn ingestion_normalizes_and_rejects_duplicates() {
        let doc =
            FanDocument::parse("dim = 1\nrays = [[3], [-2]]\nmax_cones = [[0], [1]]\n").unwrap();
        assert_eq!(doc.to_fan().unwrap(), projective_space(1).unwrap());
        let dup = FanDocument::parse(
            "dim = 2\nrays = [[1, 0], [2, 0], [0, 1]]\nmax_cones = [[0, 2], [1]]\n",
        )
        .unwrap();
        assert_eq!(dup.to_fan().unwrap_err(), FanError::DuplicateRay(0, 1));
    }
}
