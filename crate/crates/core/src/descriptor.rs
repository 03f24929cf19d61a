//! Rational homotopy types written as disjoint unions of products of named
//! spaces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Factor {
    Sphere { degree: u32 },
    EilenbergMacLane { degree: u32 },
    /// The three-dimensional Heisenberg nilmanifold.
    Heisenberg,
    /// The five-dimensional nilmanifold with model `dx = ab, dy = bc`.
    NilmanifoldY,
    /// The ten-generator space at the zero component of the free mapping
    /// space from three points in the plane to the 2-sphere.
    SpaceX,
    /// A minimal model that matched no known pattern, serialized as JSON.
    Unrecognized { model: String },
}

impl Factor {
    fn rank(&self) -> (u8, i64, &str) {
        match self {
            Factor::Sphere { degree } => (0, *degree as i64, ""),
            Factor::Heisenberg => (1, 0, ""),
            Factor::NilmanifoldY => (2, 0, ""),
            Factor::SpaceX => (3, 0, ""),
            Factor::EilenbergMacLane { degree } => (4, -(*degree as i64), ""),
            Factor::Unrecognized { model } => (5, 0, model.as_str()),
        }
    }

    /// Odd spheres are rationally Eilenberg-MacLane spaces.
    pub fn canonical(&self) -> Factor {
        match self {
            Factor::Sphere { degree } if degree % 2 == 1 => Factor::EilenbergMacLane { degree: *degree },
            other => other.clone(),
        }
    }

    fn render(&self, style: Style) -> String {
        let q = if style == Style::Unicode { "ℚ" } else { "Q" };
        match self {
            Factor::Sphere { degree } => format!("S^{degree}"),
            Factor::EilenbergMacLane { degree } => format!("K({q},{degree})"),
            Factor::Heisenberg => "H_e".into(),
            Factor::NilmanifoldY => "Y".into(),
            Factor::SpaceX => "X".into(),
            Factor::Unrecognized { model } => {
                let gens = serde_json::from_str::<serde_json::Value>(model)
                    .ok()
                    .and_then(|v| {
                        v["generators"].as_array().map(|a| {
                            a.iter()
                                .map(|g| format!("{}:{}", g["name"].as_str().unwrap_or("?"), g["degree"]))
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                    })
                    .unwrap_or_default();
                format!("?[{gens}]")
            }
        }
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FactorPower {
    pub factor: Factor,
    pub exponent: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplicity {
    /// This many path components of the given type.
    Finite(u32),
    CountablyMany,
}

/// Path components sharing one homotopy type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub multiplicity: Multiplicity,
    /// Sorted, merged; empty means a point.
    pub factors: Vec<FactorPower>,
}

impl Summand {
    pub fn new(multiplicity: Multiplicity, factors: impl IntoIterator<Item = (Factor, u32)>) -> Self {
        let mut merged: BTreeMap<Factor, u32> = BTreeMap::new();
        for (f, e) in factors {
            if e > 0 {
                *merged.entry(f).or_default() += e;
            }
        }
        Summand {
            multiplicity,
            factors: merged
                .into_iter()
                .map(|(factor, exponent)| FactorPower { factor, exponent })
                .collect(),
        }
    }

    pub fn is_point(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> BTreeMap<Factor, u32> {
        self.factors.iter().map(|p| (p.factor.clone(), p.exponent)).collect()
    }

    fn canonical_product(&self) -> BTreeMap<Factor, u32> {
        let mut out: BTreeMap<Factor, u32> = BTreeMap::new();
        for p in &self.factors {
            *out.entry(p.factor.canonical()).or_default() += p.exponent;
        }
        out
    }

    fn render_product(&self, style: Style) -> String {
        if self.factors.is_empty() {
            return "*".into();
        }
        let times = if style == Style::Unicode { " × " } else { " x " };
        self.factors
            .iter()
            .map(|p| {
                let base = p.factor.render(style);
                match (p.exponent, &p.factor) {
                    (1, _) => base,
                    (e, Factor::Sphere { .. }) => format!("({base})^{e}"),
                    (e, _) => format!("{base}^{e}"),
                }
            })
            .collect::<Vec<_>>()
            .join(times)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Ascii,
    Unicode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyTypeDescriptor {
    pub summands: Vec<Summand>,
    /// Conventions and caveats that apply to this answer.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Shared wording for descriptors containing an empty product.
pub const EMPTY_PRODUCT_NOTE: &str = "an empty product denotes a point";

impl HomotopyTypeDescriptor {
    pub fn new(summands: impl IntoIterator<Item = Summand>) -> Self {
        let mut d = HomotopyTypeDescriptor {
            summands: summands.into_iter().collect(),
            notes: Vec::new(),
        };
        d.summands.sort();
        if d.summands.iter().any(Summand::is_point) {
            d.notes.push(EMPTY_PRODUCT_NOTE.to_string());
        }
        d
    }

    /// A connected space.
    pub fn single(factors: impl IntoIterator<Item = (Factor, u32)>) -> Self {
        Self::new([Summand::new(Multiplicity::Finite(1), factors)])
    }

    pub fn countably_many(factors: impl IntoIterator<Item = (Factor, u32)>) -> Self {
        Self::new([Summand::new(Multiplicity::CountablyMany, factors)])
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// "one" when connected, "countably-many" when some summand has
    /// infinitely many components, otherwise the number of components.
    pub fn component_count(&self) -> String {
        if self.summands.iter().any(|s| s.multiplicity == Multiplicity::CountablyMany) {
            return "countably-many".into();
        }
        let total: u32 = self
            .summands
            .iter()
            .map(|s| match s.multiplicity {
                Multiplicity::Finite(c) => c,
                Multiplicity::CountablyMany => 0,
            })
            .sum();
        if total == 1 {
            "one".into()
        } else {
            total.to_string()
        }
    }

    /// Form used for comparison: odd spheres become Eilenberg-MacLane
    /// spaces, summands of equal type are merged.
    pub fn canonical(&self) -> Vec<(Multiplicity, BTreeMap<Factor, u32>)> {
        let mut by_type: BTreeMap<BTreeMap<Factor, u32>, Multiplicity> = BTreeMap::new();
        for s in &self.summands {
            let key = s.canonical_product();
            let next = match (by_type.get(&key), s.multiplicity) {
                (None, m) => m,
                (Some(Multiplicity::Finite(a)), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
                _ => Multiplicity::CountablyMany,
            };
            by_type.insert(key, next);
        }
        let mut out: Vec<_> = by_type.into_iter().map(|(k, m)| (m, k)).collect();
        out.sort();
        out
    }

    /// Same factor multisets and component counts, up to odd spheres.
    pub fn equivalent(&self, other: &HomotopyTypeDescriptor) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn render(&self, style: Style) -> String {
        let union = "⊔";
        let nat = if style == Style::Unicode { "ℕ" } else { "N" };
        let several = self.summands.len() > 1
            || self.summands.iter().any(|s| s.multiplicity != Multiplicity::Finite(1));
        let mut parts = Vec::new();
        for s in &self.summands {
            let mut body = s.render_product(style);
            if several && s.factors.len() > 1 {
                body = format!("({body})");
            }
            match s.multiplicity {
                Multiplicity::Finite(c) => parts.extend(std::iter::repeat_n(body, c as usize)),
                Multiplicity::CountablyMany => parts.push(format!("{union}_{nat} {body}")),
            }
        }
        if parts.is_empty() {
            return "(empty)".into();
        }
        parts.join(&format!(" {union} "))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for HomotopyTypeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

/// Shorthand constructors for tests and closed formulas.
pub fn sphere(degree: u32) -> Factor {
    Factor::Sphere { degree }
}

pub fn em(degree: u32) -> Factor {
    Factor::EilenbergMacLane { degree }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_like_the_theorem() {
        let d = HomotopyTypeDescriptor::new([
            Summand::new(Multiplicity::Finite(1), [(sphere(1), 3), (sphere(2), 1)]),
            Summand::new(Multiplicity::CountablyMany, [(sphere(1), 2), (sphere(3), 1)]),
        ]);
        assert_eq!(d.to_string(), "((S^1)^3 x S^2) ⊔ ⊔_N ((S^1)^2 x S^3)");
        assert_eq!(d.render(Style::Unicode), "((S^1)^3 × S^2) ⊔ ⊔_ℕ ((S^1)^2 × S^3)");
        assert_eq!(d.component_count(), "countably-many");
        let t = HomotopyTypeDescriptor::single([(em(1), 2), (em(3), 3)]);
        assert_eq!(t.to_string(), "K(Q,3)^3 x K(Q,1)^2");
        assert_eq!(t.component_count(), "one");
        let p = HomotopyTypeDescriptor::countably_many([]);
        assert_eq!(p.to_string(), "⊔_N *");
        assert_eq!(p.notes, [EMPTY_PRODUCT_NOTE]);
        let y = HomotopyTypeDescriptor::countably_many([(Factor::NilmanifoldY, 1), (em(2), 3)]);
        assert_eq!(y.to_string(), "⊔_N (Y x K(Q,2)^3)");
        let order = HomotopyTypeDescriptor::single([(em(2), 3), (sphere(3), 1), (Factor::Heisenberg, 1), (sphere(1), 1)]);
        assert_eq!(order.to_string(), "S^1 x S^3 x H_e x K(Q,2)^3");
    }

    #[test]
    fn canonical_comparison() {
        let a = HomotopyTypeDescriptor::single([(sphere(5), 1), (em(3), 3)]);
        let b = HomotopyTypeDescriptor::single([(em(5), 1), (em(3), 2), (em(3), 1)]);
        assert!(a.equivalent(&b));
        let c = HomotopyTypeDescriptor::countably_many([(em(5), 1), (em(3), 3)]);
        assert!(!a.equivalent(&c));
        let s2 = HomotopyTypeDescriptor::single([(sphere(2), 1)]);
        assert!(!s2.equivalent(&HomotopyTypeDescriptor::single([(em(2), 1)])));
    }

    #[test]
    fn json_round_trip() {
        let d = HomotopyTypeDescriptor::new([
            Summand::new(Multiplicity::Finite(1), [(Factor::SpaceX, 1)]),
            Summand::new(
                Multiplicity::CountablyMany,
                [(sphere(1), 1), (Factor::Heisenberg, 1), (em(2), 3), (sphere(3), 1)],
            ),
        ]);
        let json = d.to_json();
        assert_eq!(HomotopyTypeDescriptor::from_json(&json).unwrap(), d);
        assert!(json.contains("\"countably-many\""));
    }
}
