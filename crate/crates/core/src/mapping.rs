//! Haefliger models of free and pointed mapping spaces.
//!
//! Given a Sullivan algebra `A = (ΛV, d)` for the target and a finite
//! algebra `B` for the source, the model of the mapping space is free on
//! `V ⊗ B♯` (on `V ⊗ B₊♯` for pointed maps). Its differential is obtained by
//! writing `dv` as a sum of words `a_1 ⋯ a_s` and distributing the
//! `s`-fold coproduct of `β` over the letters:
//!
//! `d(v ⊗ β) = Σ ± (a_1 ⊗ β⁽¹⁾) ⋯ (a_s ⊗ β⁽ˢ⁾)`,
//!
//! with sign `(-1)^{Σ_{i<j} |a_j||β⁽ⁱ⁾|}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteGradedAlgebra;
use crate::coalgebra::{dualize, GradedCoalgebra};
use crate::config_space::build_cohomology_bounded;
use crate::error::{Error, Result};
use crate::gca::{sphere_model, Cdga, Generator, Polynomial};
use crate::scalar::Scalar;

/// Where a mapping-model generator comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Generator of the target model.
    pub v: String,
    /// Dual basis element of the source.
    pub beta: String,
}

#[derive(Clone, Debug)]
pub struct MappingModel {
    cdga: Cdga,
    provenance: BTreeMap<String, Provenance>,
    aliases: BTreeMap<String, String>,
    pointed: bool,
}

fn generator_name(v: &str, beta: &str) -> String {
    format!("{v}_{beta}")
}

/// Build the model of `map(X, Y)` (or `map*(X, Y)` when `pointed`).
pub fn build_mapping_model(a: &Cdga, b: &FiniteGradedAlgebra, pointed: bool) -> Result<MappingModel> {
    let coalgebra = dualize(b, pointed);
    build_from_coalgebra(a, &coalgebra)
}

pub fn build_from_coalgebra(a: &Cdga, c: &GradedCoalgebra) -> Result<MappingModel> {
    let mut table: BTreeMap<(Generator, usize), Generator> = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for v in a.generators() {
        for beta in 0..c.dim() {
            let name = generator_name(v.name(), c.label(beta));
            let g = Generator::new(&name, v.degree() + c.degree(beta));
            provenance.insert(
                name,
                Provenance {
                    v: v.name().to_string(),
                    beta: c.label(beta).to_string(),
                },
            );
            table.insert((v.clone(), beta), g);
        }
    }
    let mut differential = Vec::new();
    for v in a.generators() {
        let dv = a.d(v);
        if dv.is_zero() {
            continue;
        }
        if !dv.constant_term().is_zero() {
            return Err(Error::Precondition(format!("d({v}) has a constant term")));
        }
        for beta in 0..c.dim() {
            let mut out = Polynomial::zero();
            for (mono, coeff) in dv.terms() {
                let word = mono.expand();
                for (betas, kappa) in c.iterated_coproduct(beta, word.len()) {
                    let mut exponent = 0i64;
                    for j in 0..word.len() {
                        for &bi in &betas[..j] {
                            exponent += word[j].degree() as i64 * c.degree(bi) as i64;
                        }
                    }
                    let factors: Vec<Generator> = word
                        .iter()
                        .zip(&betas)
                        .map(|(letter, &bi)| table[&(letter.clone(), bi)].clone())
                        .collect();
                    let coefficient = &(coeff * &kappa) * &Scalar::sign_power(exponent);
                    out += &Polynomial::from_word(&factors, coefficient);
                }
            }
            differential.push((table[&(v.clone(), beta)].clone(), out));
        }
    }
    let cdga = Cdga::new(table.values().cloned(), differential)?;
    Ok(MappingModel {
        cdga,
        provenance,
        aliases: BTreeMap::new(),
        pointed: c.is_reduced(),
    })
}

/// The model of `map(F(R^m, k), S^n)` or its pointed version, with short
/// names attached when `k = 3`.
pub fn sphere_mapping_model(m: usize, k: usize, n: i32, pointed: bool, max_k: usize) -> Result<MappingModel> {
    let b = build_cohomology_bounded(m, k, max_k)?;
    let a = sphere_model(n)?;
    let mut model = build_mapping_model(&a, b.algebra(), pointed)?;
    if k == 3 {
        model.aliases = k3_aliases(&model);
    }
    Ok(model)
}

/// `x⊗1 → x`, `x⊗α_ij → p_{i+j-2}`, `x⊗α_{ij,rs} → r_{i+j-2}`, and likewise
/// `y, q, s` for the second sphere generator.
fn k3_aliases(model: &MappingModel) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (name, prov) in &model.provenance {
        let (single, double) = match prov.v.as_str() {
            "x" => ("p", "r"),
            "y" => ("q", "s"),
            _ => continue,
        };
        let beta = prov.beta.as_str();
        let alias = if beta == "1" {
            prov.v.clone()
        } else {
            let digits: Vec<usize> = beta
                .trim_start_matches('a')
                .chars()
                .take(2)
                .filter_map(|ch| ch.to_digit(10).map(|d| d as usize))
                .collect();
            let index = digits[0] + digits[1] - 2;
            let letter = if beta.contains('.') { double } else { single };
            format!("{letter}{index}")
        };
        out.insert(name.clone(), alias);
    }
    out
}

impl MappingModel {
    pub fn cdga(&self) -> &Cdga {
        &self.cdga
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn provenance(&self) -> &BTreeMap<String, Provenance> {
        &self.provenance
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    /// Short name when one exists, otherwise the full name.
    pub fn display_name(&self, g: &Generator) -> String {
        self.aliases
            .get(g.name())
            .cloned()
            .unwrap_or_else(|| g.name().to_string())
    }

    /// Resolve a full or short generator name.
    pub fn resolve(&self, name: &str) -> Result<Generator> {
        if let Ok(g) = self.cdga.generator(name) {
            return Ok(g);
        }
        self.aliases
            .iter()
            .find(|(_, a)| a.as_str() == name)
            .map(|(full, _)| self.cdga.generator(full))
            .unwrap_or_else(|| Err(Error::PresentationMismatch(name.to_string())))
    }

    /// Render a polynomial of this model with short names.
    pub fn show(&self, p: &Polynomial) -> String {
        p.fmt_with(&|g| self.display_name(g))
    }

    /// Generators grouped by degree, highest degree first, named by their
    /// short names when available.
    pub fn degree_table(&self) -> Vec<(i32, Vec<String>)> {
        let mut by_degree: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for g in self.cdga.generators() {
            by_degree.entry(g.degree()).or_default().push(self.display_name(g));
        }
        by_degree
            .into_iter()
            .rev()
            .map(|(d, mut names)| {
                names.sort();
                (d, names)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(m: usize, n: i32, pointed: bool) -> MappingModel {
        sphere_mapping_model(m, 3, n, pointed, 6).unwrap()
    }

    fn d(model: &MappingModel, name: &str) -> String {
        let g = model.resolve(name).unwrap();
        model.show(&model.cdga().d(&g))
    }

    fn poly(model: &MappingModel, terms: &[(i64, &[&str])]) -> String {
        let mut p = Polynomial::zero();
        for (c, word) in terms {
            let gens: Vec<Generator> = word.iter().map(|w| model.resolve(w).unwrap()).collect();
            p += &Polynomial::from_word(&gens, Scalar::from_int(*c));
        }
        model.show(&p)
    }

    #[test]
    fn free_differentials_k3() {
        for m in 2..=5usize {
            let mm = model(m, 2, false);
            let e = if m % 2 == 0 { 1 } else { -1 }; // (-1)^m
            let o = -e;
            assert!(mm.cdga().check_d_squared().is_pass());
            assert_eq!(d(&mm, "y"), poly(&mm, &[(1, &["x", "x"])]));
            for (q, p) in [("q1", "p1"), ("q2", "p2"), ("q3", "p3")] {
                assert_eq!(d(&mm, q), poly(&mm, &[(2, &["x", p])]));
            }
            assert_eq!(
                d(&mm, "s1"),
                poly(&mm, &[(2, &["x", "r1"]), (2 * o, &["p1", "p3"]), (2 * o, &["p1", "p2"])])
            );
            assert_eq!(
                d(&mm, "s2"),
                poly(&mm, &[(2, &["x", "r2"]), (2 * o, &["p2", "p3"]), (2 * e, &["p1", "p2"])])
            );
        }
    }

    #[test]
    fn pointed_differentials_k3() {
        for m in 2..=5usize {
            let mm = model(m, 2, true);
            let e = if m % 2 == 0 { 1 } else { -1 };
            let o = -e;
            assert_eq!(mm.cdga().len(), 10);
            assert_eq!(d(&mm, "s1"), poly(&mm, &[(2 * o, &["p1", "p3"]), (2 * o, &["p1", "p2"])]));
            assert_eq!(d(&mm, "s2"), poly(&mm, &[(2 * e, &["p1", "p2"]), (-2 * e, &["p2", "p3"])]));
            for q in ["q1", "q2", "q3", "p1", "r1"] {
                assert_eq!(d(&mm, q), "0");
            }
        }
    }

    #[test]
    fn degree_tables() {
        let t = model(4, 2, false).degree_table();
        let find = |deg: i32| t.iter().find(|(d, _)| *d == deg).map(|(_, n)| n.clone()).unwrap_or_default();
        assert_eq!(find(0), ["q1", "q2", "q3"]);
        assert_eq!(find(-1), ["p1", "p2", "p3"]);
        assert_eq!(find(-3), ["s1", "s2"]);
        assert_eq!(find(-4), ["r1", "r2"]);
        assert_eq!(find(2), ["x"]);
        assert_eq!(find(3), ["y"]);
        let t = model(2, 2, false).degree_table();
        assert_eq!(
            t,
            vec![
                (3, vec!["y".to_string()]),
                (2, ["q1", "q2", "q3", "x"].map(String::from).to_vec()),
                (1, ["p1", "p2", "p3", "s1", "s2"].map(String::from).to_vec()),
                (0, ["r1", "r2"].map(String::from).to_vec()),
            ]
        );
    }

    #[test]
    fn odd_target_has_zero_differential() {
        let mm = sphere_mapping_model(3, 4, 5, false, 6).unwrap();
        assert_eq!(mm.cdga().differentials().count(), 0);
        assert_eq!(mm.cdga().len(), 24);
        let mm = sphere_mapping_model(3, 4, 5, true, 6).unwrap();
        assert_eq!(mm.cdga().len(), 23);
    }
}
