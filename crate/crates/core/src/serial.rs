//! JSON form of a CDGA presentation.
//!
//! ```json
//! {
//!   "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 3}],
//!   "differential": {"y": [{"coeff": "1/1", "monomial": ["x", "x"]}]}
//! }
//! ```
//!
//! Only generators with nonzero differential appear under `differential`.
//! Monomials list generator names with repetition, in canonical order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gca::{Cdga, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub coeff: Scalar,
    pub monomial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdgaDocument {
    pub generators: Vec<GeneratorEntry>,
    pub differential: BTreeMap<String, Vec<TermEntry>>,
}

pub fn polynomial_terms(p: &Polynomial) -> Vec<TermEntry> {
    p.terms()
        .map(|(m, c)| TermEntry {
            coeff: c.clone(),
            monomial: m.expand().iter().map(|g| g.name().to_string()).collect(),
        })
        .collect()
}

impl CdgaDocument {
    pub fn from_cdga(cdga: &Cdga) -> Self {
        CdgaDocument {
            generators: cdga
                .generators()
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name().to_string(),
                    degree: g.degree(),
                })
                .collect(),
            differential: cdga
                .differentials()
                .map(|(g, p)| (g.name().to_string(), polynomial_terms(p)))
                .collect(),
        }
    }

    pub fn to_cdga(&self) -> Result<Cdga> {
        let gens: Vec<_> = self
            .generators
            .iter()
            .map(|e| crate::gca::Generator::new(&e.name, e.degree))
            .collect();
        let skeleton = Cdga::new(gens.clone(), [])?;
        let mut diff = Vec::new();
        for (name, terms) in &self.differential {
            let g = skeleton.generator(name)?;
            let mut p = Polynomial::zero();
            for t in terms {
                let word = t
                    .monomial
                    .iter()
                    .map(|n| skeleton.generator(n))
                    .collect::<Result<Vec<_>>>()?;
                p += &Polynomial::from_word(&word, t.coeff.clone());
            }
            diff.push((g, p));
        }
        Cdga::new(gens, diff)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Shorthand: serialize a presentation.
pub fn cdga_to_json(cdga: &Cdga) -> String {
    CdgaDocument::from_cdga(cdga).to_json()
}

/// Shorthand: parse a presentation.
pub fn cdga_from_json(s: &str) -> Result<Cdga> {
    CdgaDocument::from_json(s)?.to_cdga()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::sphere_model;

    #[test]
    fn sphere_document() {
        let a = sphere_model(2).unwrap();
        let json = cdga_to_json(&a);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["generators"][1]["degree"], 3);
        assert_eq!(v["differential"]["y"][0]["coeff"], "1/1");
        assert_eq!(v["differential"]["y"][0]["monomial"], serde_json::json!(["x", "x"]));
        assert_eq!(cdga_from_json(&json).unwrap(), a);
    }

    #[test]
    fn rejects_unknown_names() {
        let bad = r#"{"generators":[{"name":"x","degree":1}],"differential":{"x":[{"coeff":"1","monomial":["z"]}]}}"#;
        assert!(matches!(cdga_from_json(bad), Err(Error::PresentationMismatch(_))));
        assert!(matches!(cdga_from_json("{"), Err(Error::Parse(_))));
    }
}
