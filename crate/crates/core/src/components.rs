//! Path components of a mapping space and their Sullivan models.
//!
//! A component corresponds to an augmentation: rational values for the
//! degree-0 generators that make every degree -1 generator's differential
//! vanish once all other generators are set to zero. The equations are
//! solved by splitting on rational linear factors, so each solution family
//! is an affine subspace.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gca::{Cdga, Generator, Polynomial};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::mapping::MappingModel;
use crate::scalar::Scalar;

/// One equation of the degree-0 system, coming from `d(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub source: Generator,
    pub polynomial: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeZeroSystem {
    /// Degree-0 generators, in generator order.
    pub unknowns: Vec<Generator>,
    pub equations: Vec<Equation>,
}

/// Values of the degree-0 generators, keyed by full generator name.
/// Generators not listed take the value 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Augmentation {
    pub values: BTreeMap<String, Scalar>,
}

impl Augmentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn value(&self, name: &str) -> Scalar {
        self.values.get(name).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Parse `"q1=1,q2=-1/2"`. Names may be full or short generator names and
    /// must refer to degree-0 generators of `model`.
    pub fn parse(model: &MappingModel, text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
            let g = model.resolve(name.trim())?;
            let v: Scalar = value.parse()?;
            if values.insert(g.name().to_string(), v).is_some() {
                return Err(Error::Parse(format!("{name} assigned twice")));
            }
        }
        let aug = Augmentation { values };
        check_names(model, &aug)?;
        Ok(aug)
    }
}

fn check_names(model: &MappingModel, u: &Augmentation) -> Result<()> {
    for name in u.values.keys() {
        let g = model.cdga().generator(name)?;
        if g.degree() != 0 {
            return Err(Error::Precondition(format!(
                "{} has degree {}, only degree-0 generators take values",
                model.display_name(&g),
                g.degree()
            )));
        }
    }
    Ok(())
}

/// The augmentation system: for each generator `w` of degree -1, `d(w)` with
/// degree-0 generators kept as unknowns and everything else set to zero.
/// Zero equations are dropped; each equation is scaled to have leading
/// coefficient 1.
pub fn degree_zero_system(model: &MappingModel) -> DegreeZeroSystem {
    let cdga = model.cdga();
    let unknowns: Vec<Generator> = cdga.generators().iter().filter(|g| g.degree() == 0).cloned().collect();
    let kill = |g: &Generator| if g.degree() == 0 { None } else { Some(Polynomial::zero()) };
    let mut equations = Vec::new();
    for w in cdga.generators().iter().filter(|g| g.degree() == -1) {
        let p = cdga.d(w).substitute(&kill);
        let lead = p.terms().next().map(|(_, c)| c.clone());
        if let Some(lead) = lead {
            let p = p.scale(&lead.recip());
            equations.push(Equation {
                source: w.clone(),
                polynomial: p,
            });
        }
    }
    DegreeZeroSystem { unknowns, equations }
}

impl DegreeZeroSystem {
    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

/// An affine expression `constant + Σ coefficient · parameter`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearExpr {
    pub constant: Scalar,
    pub coefficients: BTreeMap<String, Scalar>,
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() || self.coefficients.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (p, c) in &self.coefficients {
            let term = if c.is_one() {
                p.clone()
            } else if (-c.clone()).is_one() {
                format!("-{p}")
            } else {
                format!("{c}*{p}")
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, part) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(part);
            } else if let Some(rest) = part.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(part);
            }
        }
        f.write_str(&out)
    }
}

/// A family of augmentations parametrized by an affine subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationFamily {
    pub parameters: Vec<String>,
    /// Generator name -> value as an affine expression in the parameters.
    pub values: BTreeMap<String, LinearExpr>,
    /// Side conditions on the parameters. The families produced here are
    /// closed affine subspaces, so this is always empty.
    pub constraints: Vec<String>,
    unknowns: Vec<Generator>,
    /// Defining equations in reduced echelon form; column `n - 1 - i` is
    /// unknown `i`, column `n` the constant.
    equations: Echelon,
}

impl AugmentationFamily {
    fn from_echelon(unknowns: &[Generator], equations: Echelon) -> Self {
        let n = unknowns.len();
        let col = |i: usize| n - 1 - i;
        let free: Vec<usize> = (0..n).filter(|&i| equations.row(col(i)).is_none()).collect();
        let parameters: Vec<String> = (1..=free.len()).map(|i| format!("t{i}")).collect();
        let param_of: BTreeMap<usize, String> =
            free.iter().cloned().zip(parameters.iter().cloned()).collect();
        let mut values = BTreeMap::new();
        for (i, g) in unknowns.iter().enumerate() {
            let expr = match equations.row(col(i)) {
                None => LinearExpr {
                    constant: Scalar::zero(),
                    coefficients: BTreeMap::from([(param_of[&i].clone(), Scalar::one())]),
                },
                Some(row) => {
                    let mut coefficients = BTreeMap::new();
                    let mut constant = Scalar::zero();
                    for (c, a) in row {
                        if *c == col(i) {
                            continue;
                        }
                        if *c == n {
                            constant = -a.clone();
                        } else {
                            coefficients.insert(param_of[&(n - 1 - c)].clone(), -a.clone());
                        }
                    }
                    LinearExpr { constant, coefficients }
                }
            };
            values.insert(g.name().to_string(), expr);
        }
        AugmentationFamily {
            parameters,
            values,
            constraints: Vec::new(),
            unknowns: unknowns.to_vec(),
            equations,
        }
    }

    pub fn dimension(&self) -> usize {
        self.parameters.len()
    }

    /// The augmentation at the given parameter values.
    pub fn point(&self, params: &[Scalar]) -> Augmentation {
        assert_eq!(params.len(), self.parameters.len(), "wrong number of parameters");
        let env: BTreeMap<&str, &Scalar> =
            self.parameters.iter().map(|s| s.as_str()).zip(params.iter()).collect();
        let values = self
            .values
            .iter()
            .map(|(g, e)| {
                let mut v = e.constant.clone();
                for (p, c) in &e.coefficients {
                    v += &(c * env[p.as_str()]);
                }
                (g.clone(), v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Augmentation { values }
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &AugmentationFamily) -> bool {
        other.equations.rows().all(|(_, r)| self.equations.contains(r))
    }

    /// Intersection of two families, if nonempty.
    pub fn intersect(&self, other: &AugmentationFamily) -> Option<AugmentationFamily> {
        let n = self.unknowns.len();
        let mut e = self.equations.clone();
        for (_, r) in other.equations.rows() {
            if e.insert(r) == Some(n) {
                return None;
            }
        }
        Some(AugmentationFamily::from_echelon(&self.unknowns, e))
    }

    pub fn contains(&self, u: &Augmentation) -> bool {
        let n = self.unknowns.len();
        self.equations.rows().all(|(_, r)| {
            let mut total = Scalar::zero();
            for (c, a) in r {
                if *c == n {
                    total += a;
                } else {
                    total += &(a * &u.value(self.unknowns[n - 1 - c].name()));
                }
            }
            total.is_zero()
        })
    }

    /// Render as `(t1, 0, -t1)` over the unknowns, using `name` for headers.
    pub fn tuple(&self) -> String {
        let parts: Vec<String> = self
            .unknowns
            .iter()
            .map(|g| self.values[g.name()].to_string())
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Solve the system by splitting on linear factors. Returns the maximal
/// solution families; an empty system gives the whole affine space.
pub fn enumerate_augmentation_families(system: &DegreeZeroSystem) -> Result<Vec<AugmentationFamily>> {
    let unknowns = &system.unknowns;
    let index: BTreeMap<Generator, usize> = unknowns.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut found: Vec<Echelon> = Vec::new();
    let eqs: Vec<Polynomial> = system.equations.iter().map(|e| e.polynomial.clone()).collect();
    split(&eqs, unknowns, &index, Echelon::new(), &mut found)?;
    let families: Vec<AugmentationFamily> = found
        .into_iter()
        .map(|e| AugmentationFamily::from_echelon(unknowns, e))
        .collect();
    let mut maximal: Vec<AugmentationFamily> = Vec::new();
    for (i, f) in families.iter().enumerate() {
        let dominated = families.iter().enumerate().any(|(j, g)| {
            j != i && f.is_contained_in(g) && (!g.is_contained_in(f) || j < i)
        });
        if !dominated {
            maximal.push(f.clone());
        }
    }
    maximal.sort_by(|a, b| {
        b.dimension()
            .cmp(&a.dimension())
            .then_with(|| family_key(a).cmp(&family_key(b)))
    });
    Ok(maximal)
}

/// Sort key: for each unknown, whether it is a parameter-free zero, then the
/// expression text. Families with earlier nonzero coordinates come first.
fn family_key(f: &AugmentationFamily) -> Vec<(bool, String)> {
    f.unknowns
        .iter()
        .map(|g| {
            let e = &f.values[g.name()];
            (e.coefficients.is_empty() && e.constant.is_zero(), e.to_string())
        })
        .collect()
}

fn linear_row(p: &Polynomial, index: &BTreeMap<Generator, usize>) -> SparseVec {
    let n = index.len();
    let mut row = SparseVec::new();
    for (m, c) in p.terms() {
        let col = match m.factors() {
            [] => n,
            [(g, 1)] => n - 1 - index[g],
            _ => unreachable!("linear_row on a nonlinear polynomial"),
        };
        row.insert(col, c.clone());
    }
    row
}

fn substitute_constraints(p: &Polynomial, unknowns: &[Generator], constraints: &Echelon) -> Polynomial {
    let n = unknowns.len();
    let f = |g: &Generator| -> Option<Polynomial> {
        let i = unknowns.iter().position(|u| u == g)?;
        let row = constraints.row(n - 1 - i)?;
        let mut out = Polynomial::zero();
        for (c, a) in row {
            if *c == n - 1 - i {
                continue;
            }
            if *c == n {
                out += &Polynomial::constant(-a.clone());
            } else {
                out += &Polynomial::var(&unknowns[n - 1 - c]).scale(&-a.clone());
            }
        }
        Some(out)
    };
    p.substitute(&f)
}

fn split(
    eqs: &[Polynomial],
    unknowns: &[Generator],
    index: &BTreeMap<Generator, usize>,
    constraints: Echelon,
    found: &mut Vec<Echelon>,
) -> Result<()> {
    let n = unknowns.len();
    let mut pending = None;
    for (i, e) in eqs.iter().enumerate() {
        let r = substitute_constraints(e, unknowns, &constraints);
        if !r.is_zero() {
            pending = Some((i, r));
            break;
        }
    }
    let Some((i, eq)) = pending else {
        found.push(constraints);
        return Ok(());
    };
    if eq.generators().is_empty() {
        return Ok(());
    }
    let factors = linear_factors(&eq).ok_or_else(|| Error::UnsolvableByFactorization {
        residual: eqs[i..]
            .iter()
            .map(|e| format!("{} = 0", substitute_constraints(e, unknowns, &constraints)))
            .filter(|s| s != "0 = 0")
            .collect(),
    })?;
    let mut seen: Vec<SparseVec> = Vec::new();
    for f in factors {
        let row = linear_row(&f, index);
        let mut probe = Echelon::new();
        probe.insert(&row);
        if seen.iter().any(|s| probe.contains(s)) {
            continue;
        }
        seen.push(row.clone());
        let mut next = constraints.clone();
        if next.insert(&row) == Some(n) {
            continue;
        }
        split(&eqs[i + 1..], unknowns, index, next, found)?;
    }
    Ok(())
}

/// Factor a polynomial in commuting (degree-0) variables into rational
/// linear forms, dropping constant factors. `None` when no such
/// factorization is found.
pub fn linear_factors(p: &Polynomial) -> Option<Vec<Polynomial>> {
    if p.is_zero() {
        return None;
    }
    // monomial content
    let mut content: BTreeMap<Generator, u32> = BTreeMap::new();
    let mut first = true;
    for (m, _) in p.terms() {
        let here: BTreeMap<Generator, u32> = m.factors().iter().cloned().collect();
        if first {
            content = here;
            first = false;
        } else {
            content = content
                .into_iter()
                .filter_map(|(g, e)| here.get(&g).map(|h| (g, e.min(*h))))
                .collect();
        }
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for (g, e) in &content {
        for _ in 0..*e {
            out.push(Polynomial::var(g));
        }
    }
    let mut rest = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut word = Vec::new();
        for (g, e) in m.factors() {
            for _ in 0..(e - content.get(g).copied().unwrap_or(0)) {
                word.push(g.clone());
            }
        }
        rest += &Polynomial::from_word(&word, c.clone());
    }
    let top = rest.terms().map(|(m, _)| m.word_length()).max().unwrap_or(0);
    match top {
        0 => {}
        1 => out.push(rest),
        2 => {
            let (a, b) = factor_quadratic(&rest)?;
            out.push(a);
            out.push(b);
        }
        _ => return None,
    }
    Some(out)
}

fn homogenizer() -> Generator {
    Generator::new("\u{1}h", 0)
}

fn factor_quadratic(q: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    let t = homogenizer();
    let mut qh = Polynomial::zero();
    for (m, c) in q.terms() {
        let mut word = m.expand();
        for _ in m.word_length()..2 {
            word.push(t.clone());
        }
        qh += &Polynomial::from_word(&word, c.clone());
    }
    let (a, b) = factor_quadratic_form(&qh)?;
    let dehom = |g: &Generator| if *g == t { Some(Polynomial::one()) } else { None };
    let (a, b) = (a.substitute(&dehom), b.substitute(&dehom));
    if &a * &b != *q {
        return None;
    }
    Some((a, b))
}

fn square_coefficient(q: &Polynomial, g: &Generator) -> Scalar {
    q.terms()
        .find(|(m, _)| m.factors() == [(g.clone(), 2)])
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Scalar::zero)
}

/// Coefficient of `g·h` (`g != h`) in a quadratic form.
fn cross_coefficient(q: &Polynomial, g: &Generator, h: &Generator) -> Scalar {
    q.terms()
        .find(|(m, _)| m.word_length() == 2 && m.exponent(g) == 1 && m.exponent(h) == 1)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Scalar::zero)
}

/// Write a quadratic form as a product of two linear forms.
fn factor_quadratic_form(q: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    let vars: Vec<Generator> = q.generators().into_iter().collect();
    let Some(v) = vars.iter().find(|g| !square_coefficient(q, g).is_zero()).cloned() else {
        // only cross terms: shear v -> v + u to create a square
        let (m, _) = q.terms().next()?;
        let (v, u) = (m.factors()[0].0.clone(), m.factors()[1].0.clone());
        let shear = |to: Polynomial| {
            let v = v.clone();
            move |g: &Generator| if *g == v { Some(to.clone()) } else { None }
        };
        let forward = &Polynomial::var(&v) + &Polynomial::var(&u);
        let backward = &Polynomial::var(&v) - &Polynomial::var(&u);
        let (a, b) = factor_quadratic_form(&q.substitute(&shear(forward)))?;
        return Some((a.substitute(&shear(backward.clone())), b.substitute(&shear(backward))));
    };
    let a = square_coefficient(q, &v);
    let mut bl = Polynomial::zero();
    let mut c = Polynomial::zero();
    for (m, coeff) in q.terms() {
        match m.exponent(&v) {
            2 => {}
            1 => {
                let other: Vec<Generator> = m.expand().into_iter().filter(|g| *g != v).collect();
                bl += &Polynomial::from_word(&other, coeff.clone());
            }
            _ => c += &Polynomial::term(m.clone(), coeff.clone()),
        }
    }
    let disc = &(&bl * &bl) - &c.scale(&(Scalar::from_int(4) * &a));
    let root = if disc.is_zero() {
        Polynomial::zero()
    } else {
        let dv: Vec<Generator> = disc.generators().into_iter().collect();
        let w = dv.iter().find(|g| !square_coefficient(&disc, g).is_zero())?.clone();
        let s = square_coefficient(&disc, &w).sqrt()?;
        let mut r = Polynomial::var(&w).scale(&s);
        for u in dv.iter().filter(|u| **u != w) {
            let k = cross_coefficient(&disc, &w, u);
            r += &Polynomial::var(u).scale(&(k / (Scalar::from_int(2) * &s)));
        }
        if &r * &r != disc {
            return None;
        }
        r
    };
    let lead = Polynomial::var(&v).scale(&(Scalar::from_int(2) * &a));
    let f1 = &(&lead + &bl) - &root;
    let f2 = &(&lead + &bl) + &root;
    let f1 = f1.scale(&(Scalar::from_int(4) * &a).recip());
    if &f1 * &f2 != *q {
        return None;
    }
    Some((f1, f2))
}

/// Check an augmentation against the system. Returns the violated equations
/// (empty when valid).
pub fn validate_augmentation(model: &MappingModel, u: &Augmentation) -> Result<Vec<String>> {
    check_names(model, u)?;
    let cdga = model.cdga();
    let eval = evaluation(u);
    let mut bad = Vec::new();
    for w in cdga.generators().iter().filter(|g| g.degree() == -1) {
        let value = cdga.d(w).substitute(&eval);
        if !value.is_zero() {
            bad.push(format!(
                "d({}) = {} evaluates to {}",
                model.display_name(w),
                model.show(&cdga.d(w).substitute(&|g: &Generator| {
                    if g.degree() == 0 { None } else { Some(Polynomial::zero()) }
                })),
                value
            ));
        }
    }
    Ok(bad)
}

/// Substitution killing nonzero-degree generators and evaluating degree-0
/// ones at `u`.
fn evaluation(u: &Augmentation) -> impl Fn(&Generator) -> Option<Polynomial> + '_ {
    move |g: &Generator| {
        if g.degree() == 0 {
            Some(Polynomial::constant(u.value(g.name())))
        } else {
            Some(Polynomial::zero())
        }
    }
}

/// The Sullivan model of the component of an augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentModel {
    pub cdga: Cdga,
    pub augmentation: Augmentation,
}

/// Quotient by negative-degree generators, `g - u(g)` for degree-0 `g`, and
/// the image of the degree-0 generators under `d`. Generators of the result
/// carry the display names of `model`.
pub fn component_model(model: &MappingModel, u: &Augmentation) -> Result<ComponentModel> {
    let violations = validate_augmentation(model, u)?;
    if !violations.is_empty() {
        return Err(Error::InvalidAugmentation { violations });
    }
    let cdga = model.cdga();
    let rename = |g: &Generator| Generator::new(model.display_name(g), g.degree());
    let sub = |g: &Generator| -> Option<Polynomial> {
        match g.degree() {
            d if d < 0 => Some(Polynomial::zero()),
            0 => Some(Polynomial::constant(u.value(g.name()))),
            _ => None,
        }
    };
    let degree_one: Vec<Generator> = cdga
        .generators()
        .iter()
        .filter(|g| g.degree() == 1)
        .map(rename)
        .collect();
    let mut ech = Echelon::new();
    let w1 = degree_one.len();
    for w in cdga.generators().iter().filter(|g| g.degree() == 0) {
        let image = cdga.d(w).substitute(&sub).rename(&rename);
        let mut row = SparseVec::new();
        for (m, c) in image.terms() {
            match m.factors() {
                [(g, 1)] if g.degree() == 1 => {
                    let i = degree_one.iter().position(|h| h == g).expect("degree-1 generator");
                    row.insert(w1 - 1 - i, c.clone());
                }
                _ => {
                    return Err(Error::Unsupported(format!(
                        "d({}) is not linear in degree 1 after substitution",
                        model.display_name(w)
                    )))
                }
            }
        }
        ech.insert(&row);
    }
    let eliminated: BTreeMap<Generator, Polynomial> = ech
        .rows()
        .map(|(p, row)| {
            let g = degree_one[w1 - 1 - p].clone();
            let mut value = Polynomial::zero();
            for (c, a) in row {
                if *c != p {
                    value += &Polynomial::var(&degree_one[w1 - 1 - c]).scale(&-a.clone());
                }
            }
            (g, value)
        })
        .collect();
    let identify = |g: &Generator| eliminated.get(g).cloned();
    let mut gens = Vec::new();
    let mut diff = Vec::new();
    for g in cdga.generators().iter().filter(|g| g.degree() >= 1) {
        let h = rename(g);
        if eliminated.contains_key(&h) {
            continue;
        }
        let dg = cdga.d(g).substitute(&sub).rename(&rename).substitute(&identify);
        gens.push(h.clone());
        diff.push((h, dg));
    }
    let out = Cdga::new(gens, diff)?;
    debug_assert!(out.check_d_squared().is_pass());
    Ok(ComponentModel {
        cdga: out,
        augmentation: u.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Separated by a degree-0 cycle.
    Distinct,
    /// The two inputs are the same.
    Identical,
    /// Not separated by degree-0 cycles; no claim is made.
    Undetermined,
}

/// Linear combinations of degree-0 generators that are cycles once
/// negative-degree generators are killed, as coefficient maps.
pub fn degree_zero_cycles(model: &MappingModel) -> Vec<BTreeMap<String, Scalar>> {
    let cdga = model.cdga();
    let zero: Vec<&Generator> = cdga.generators().iter().filter(|g| g.degree() == 0).collect();
    let kill = |g: &Generator| if g.degree() < 0 { Some(Polynomial::zero()) } else { None };
    let mut columns: BTreeMap<crate::gca::Monomial, usize> = BTreeMap::new();
    let images: Vec<SparseVec> = zero
        .iter()
        .map(|g| {
            let img = cdga.d(g).substitute(&kill);
            img.terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    kernel(&images, columns.len())
        .into_iter()
        .map(|v| v.into_iter().map(|(i, c)| (zero[i].name().to_string(), c)).collect())
        .collect()
}

fn evaluate_on_cycles(cycles: &[BTreeMap<String, Scalar>], u: &Augmentation) -> Vec<Scalar> {
    cycles
        .iter()
        .map(|z| z.iter().fold(Scalar::zero(), |acc, (g, c)| acc + c * &u.value(g)))
        .collect()
}

pub fn points_distinct(model: &MappingModel, u: &Augmentation, v: &Augmentation) -> Verdict {
    let strip = |a: &Augmentation| -> BTreeMap<String, Scalar> {
        a.values.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect()
    };
    if strip(u) == strip(v) {
        return Verdict::Identical;
    }
    let cycles = degree_zero_cycles(model);
    if evaluate_on_cycles(&cycles, u) != evaluate_on_cycles(&cycles, v) {
        Verdict::Distinct
    } else {
        Verdict::Undetermined
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctnessReport {
    /// `(i, j, verdict)` for each pair of families `i < j`.
    pub pairs: Vec<(usize, usize, Verdict)>,
    /// Whether distinct parameter values within each family are separated.
    pub within: Vec<Verdict>,
}

/// Compare families through their values on degree-0 cycles: two families
/// are reported distinct when their images differ, and the points of a
/// family are reported pairwise distinct when the evaluation is injective
/// on it.
pub fn components_distinct(model: &MappingModel, families: &[AugmentationFamily]) -> DistinctnessReport {
    let cycles = degree_zero_cycles(model);
    let image = |f: &AugmentationFamily| -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
        let k = f.dimension();
        let zero = vec![Scalar::zero(); k];
        let base = evaluate_on_cycles(&cycles, &f.point(&zero));
        let dirs = (0..k)
            .map(|i| {
                let mut e = zero.clone();
                e[i] = Scalar::one();
                let p = evaluate_on_cycles(&cycles, &f.point(&e));
                p.iter().zip(&base).map(|(a, b)| a - b).collect()
            })
            .collect();
        (base, dirs)
    };
    let to_sparse = |v: &[Scalar]| -> SparseVec {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
    };
    let images: Vec<_> = families.iter().map(image).collect();
    let mut within = Vec::new();
    for (base, dirs) in &images {
        let _ = base;
        let mut e = Echelon::new();
        let injective = dirs.iter().all(|d| e.insert(&to_sparse(d)).is_some());
        within.push(if injective { Verdict::Distinct } else { Verdict::Undetermined });
    }
    let mut pairs = Vec::new();
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            let verdict = if families[i] == families[j] {
                Verdict::Identical
            } else {
                let (bi, di) = &images[i];
                let (bj, dj) = &images[j];
                let mut ei = Echelon::new();
                di.iter().for_each(|d| {
                    ei.insert(&to_sparse(d));
                });
                let mut ej = Echelon::new();
                dj.iter().for_each(|d| {
                    ej.insert(&to_sparse(d));
                });
                let shift: Vec<Scalar> = bi.iter().zip(bj).map(|(a, b)| a - b).collect();
                let same_span = ei.rank() == ej.rank() && dj.iter().all(|d| ei.contains(&to_sparse(d)));
                if same_span && ei.contains(&to_sparse(&shift)) {
                    Verdict::Undetermined
                } else {
                    Verdict::Distinct
                }
            };
            pairs.push((i, j, verdict));
        }
    }
    DistinctnessReport { pairs, within }
}
