//! Minimal models of components and their identification with named spaces.

use std::collections::{BTreeMap, BTreeSet};

use crate::cochains::{cohomology_dims, monomials_of_degree};
use crate::components::{
    component_model, degree_zero_system, enumerate_augmentation_families, Augmentation, AugmentationFamily,
    ComponentModel,
};
use crate::descriptor::{em, sphere, Factor, HomotopyTypeDescriptor, Multiplicity, Summand};
use crate::error::{Error, Result};
use crate::gca::{Cdga, Generator, Monomial, Polynomial};
use crate::linalg::{inverse, kernel, Echelon, SparseVec};
use crate::mapping::{sphere_mapping_model, MappingModel};
use crate::scalar::Scalar;
use crate::serial::CdgaDocument;

/// Remove contractible pairs `(w, dw)` until every differential is
/// decomposable.
pub fn minimalize(model: &ComponentModel) -> Result<ComponentModel> {
    Ok(ComponentModel {
        cdga: minimalize_cdga(&model.cdga)?,
        augmentation: model.augmentation.clone(),
    })
}

pub fn minimalize_cdga(cdga: &Cdga) -> Result<Cdga> {
    if let Some(g) = cdga.generators().iter().find(|g| g.degree() < 1) {
        return Err(Error::Precondition(format!("{} has degree {} < 1", g.name(), g.degree())));
    }
    let mut current = cdga.clone();
    while let Some((w, g, c)) = contractible_pair(&current) {
        let dw = current.d(&w);
        let rest = &dw - &Polynomial::var(&g).scale(&c);
        let kill_w = |h: &Generator| if *h == w { Some(Polynomial::zero()) } else { None };
        let value = rest.scale(&-c.recip()).substitute(&kill_w);
        let sub = |h: &Generator| {
            if *h == w {
                Some(Polynomial::zero())
            } else if *h == g {
                Some(value.clone())
            } else {
                None
            }
        };
        let gens: Vec<Generator> = current.generators().iter().filter(|h| **h != w && **h != g).cloned().collect();
        let diff: Vec<(Generator, Polynomial)> = gens.iter().map(|h| (h.clone(), current.d(h).substitute(&sub))).collect();
        current = Cdga::new(gens, diff)?;
    }
    Ok(current)
}

/// A generator `w` with a linear term `c·g` in `dw` such that `g` does not
/// occur in the rest of `dw`.
fn contractible_pair(cdga: &Cdga) -> Option<(Generator, Generator, Scalar)> {
    for (w, dw) in cdga.differentials() {
        for (g, c) in dw.linear_part() {
            let rest = dw - &Polynomial::var(&g).scale(&c);
            if !rest.generators().contains(&g) {
                return Some((w.clone(), g, c));
            }
        }
    }
    None
}

/// Replace each generator `h` by `h - P`, with `P` decomposable, so that
/// `dh` is reduced modulo the differentials of decomposables.
pub fn reduce_exact_parts(cdga: &Cdga) -> Result<Cdga> {
    let mut current = cdga.clone();
    let mut order: Vec<Generator> = current.generators().to_vec();
    order.sort_by_key(|g| (g.degree(), g.name().to_string()));
    for h in order {
        let dh = current.d(&h);
        if dh.is_zero() {
            continue;
        }
        let others: Vec<Generator> = current.generators().iter().filter(|g| **g != h).cloned().collect();
        let candidates: Vec<Monomial> = monomials_of_degree(&others, h.degree())
            .into_iter()
            .filter(|m| m.word_length() >= 2)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let images: Vec<Polynomial> = candidates
            .iter()
            .map(|m| current.apply_differential(&Polynomial::term(m.clone(), Scalar::one())))
            .collect();
        let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in images.iter().chain(std::iter::once(&dh)) {
            for (m, _) in p.terms() {
                let next = columns.len();
                columns.entry(m.clone()).or_insert(next);
            }
        }
        let width = columns.len();
        let to_vec = |p: &Polynomial| -> SparseVec { p.terms().map(|(m, c)| (columns[m], c.clone())).collect() };
        let mut ech = Echelon::new();
        for (i, img) in images.iter().enumerate() {
            let mut row = to_vec(img);
            row.insert(width + i, Scalar::one());
            ech.insert(&row);
        }
        let reduced = ech.reduce_where(&to_vec(&dh), |p| p < width);
        let mut correction = Polynomial::zero();
        for (c, a) in &reduced {
            if *c >= width {
                correction += &Polynomial::term(candidates[c - width].clone(), -a.clone());
            }
        }
        if correction.is_zero() {
            continue;
        }
        // h = h' + correction
        let shifted = &Polynomial::var(&h) + &correction;
        let sub = |g: &Generator| if *g == h { Some(shifted.clone()) } else { None };
        let new_dh = (&dh - &current.apply_differential(&correction)).substitute(&sub);
        let diff: Vec<(Generator, Polynomial)> = current
            .generators()
            .iter()
            .map(|g| {
                if *g == h {
                    (g.clone(), new_dh.clone())
                } else {
                    (g.clone(), current.d(g).substitute(&sub))
                }
            })
            .collect();
        current = Cdga::new(current.generators().to_vec(), diff)?;
    }
    Ok(current)
}

/// Left derivative `∂P/∂g` with Koszul signs.
fn derivative(p: &Polynomial, g: &Generator) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let word = m.expand();
        let mut before = 0i64;
        for (i, letter) in word.iter().enumerate() {
            if letter == g {
                let mut rest = word[..i].to_vec();
                rest.extend_from_slice(&word[i + 1..]);
                out += &Polynomial::from_word(&rest, c * &Scalar::sign_power(before * g.degree() as i64));
            }
            before += letter.degree() as i64;
        }
    }
    out
}

/// In each degree, change basis so that cycles not involved in any
/// differential become separate generators.
pub fn adapt_bases(cdga: &Cdga) -> Result<Cdga> {
    let degrees: BTreeSet<i32> = cdga.generators().iter().map(|g| g.degree()).collect();
    let mut current = cdga.clone();
    for deg in degrees {
        current = adapt_degree(&current, deg)?;
    }
    Ok(current)
}

fn unit(i: usize) -> SparseVec {
    SparseVec::from([(i, Scalar::one())])
}

fn adapt_degree(cdga: &Cdga, deg: i32) -> Result<Cdga> {
    let gens: Vec<Generator> = cdga.generators().iter().filter(|g| g.degree() == deg).cloned().collect();
    let r = gens.len();
    // support: row space of (P, μ) -> coefficient of μ in ∂_i P
    let mut support = Echelon::new();
    for (_, p) in cdga.differentials() {
        let mut rows: BTreeMap<Monomial, SparseVec> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            for (m, c) in derivative(p, g).terms() {
                rows.entry(m.clone()).or_default().insert(i, c.clone());
            }
        }
        for row in rows.values() {
            support.insert(row);
        }
    }
    // cycles
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    let images: Vec<SparseVec> = gens
        .iter()
        .map(|g| {
            cdga.d(g)
                .terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    let cycles = kernel(&images, columns.len());
    let cycle_space = {
        let mut e = Echelon::new();
        cycles.iter().for_each(|z| {
            e.insert(z);
        });
        e
    };
    let mut chosen: Vec<SparseVec> = Vec::new();
    let mut span = Echelon::new();
    let mut take = |v: SparseVec, chosen: &mut Vec<SparseVec>| {
        if span.insert(&v).is_some() {
            chosen.push(v);
        }
    };
    // unit vectors first, to leave the basis alone where possible
    for i in 0..r {
        if support.contains(&unit(i)) {
            take(unit(i), &mut chosen);
        }
    }
    for (_, row) in support.rows() {
        take(row.clone(), &mut chosen);
    }
    let in_support = chosen.len();
    for i in 0..r {
        if cycle_space.contains(&unit(i)) {
            take(unit(i), &mut chosen);
        }
    }
    for z in &cycles {
        take(z.clone(), &mut chosen);
    }
    let free_cycles = chosen.len() - in_support;
    if free_cycles == 0 {
        return Ok(cdga.clone());
    }
    for i in 0..r {
        take(unit(i), &mut chosen);
    }
    if chosen.iter().all(|v| v.len() == 1) {
        return Ok(cdga.clone());
    }
    // names: unit vectors keep their generator's name
    let mut unused: Vec<usize> = (0..r)
        .filter(|i| !chosen.iter().any(|v| v.len() == 1 && v.contains_key(i)))
        .collect();
    unused.reverse();
    let new_gens: Vec<Generator> = chosen
        .iter()
        .map(|v| {
            if v.len() == 1 {
                gens[*v.keys().next().unwrap()].clone()
            } else {
                gens[unused.pop().expect("enough names")].clone()
            }
        })
        .collect();
    let dense: Vec<Vec<Scalar>> = chosen
        .iter()
        .map(|v| (0..r).map(|i| v.get(&i).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect();
    substitute_basis(cdga, &gens, &new_gens, &dense)
}

/// Linear change of basis among the generators of degree `deg`: row `k` of
/// `matrix` gives the `k`-th new generator in terms of the old ones, in
/// generator order. Names are kept.
pub fn change_basis(cdga: &Cdga, deg: i32, matrix: &[Vec<Scalar>]) -> Result<Cdga> {
    let gens: Vec<Generator> = cdga.generators().iter().filter(|g| g.degree() == deg).cloned().collect();
    if matrix.len() != gens.len() || matrix.iter().any(|r| r.len() != gens.len()) {
        return Err(Error::Precondition(format!("need a {0}x{0} matrix for degree {deg}", gens.len())));
    }
    substitute_basis(cdga, &gens, &gens, matrix)
}

fn substitute_basis(cdga: &Cdga, gens: &[Generator], new_gens: &[Generator], dense: &[Vec<Scalar>]) -> Result<Cdga> {
    let inv = inverse(dense).ok_or_else(|| Error::Precondition("basis change matrix is singular".into()))?;
    // old v_i = Σ_k inv[i][k] e_k
    let old_in_new: BTreeMap<Generator, Polynomial> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut p = Polynomial::zero();
            for (k, e) in new_gens.iter().enumerate() {
                if !inv[i][k].is_zero() {
                    p += &Polynomial::var(e).scale(&inv[i][k]);
                }
            }
            (g.clone(), p)
        })
        .collect();
    let sub = |g: &Generator| old_in_new.get(g).cloned();
    let mut diff: Vec<(Generator, Polynomial)> = Vec::new();
    for g in cdga.generators().iter().filter(|g| !old_in_new.contains_key(g)) {
        diff.push((g.clone(), cdga.d(g).substitute(&sub)));
    }
    for (k, e) in new_gens.iter().enumerate() {
        let mut p = Polynomial::zero();
        for (i, g) in gens.iter().enumerate() {
            if !dense[k][i].is_zero() {
                p.add_scaled(&cdga.d(g), &dense[k][i]);
            }
        }
        diff.push((e.clone(), p.substitute(&sub)));
    }
    Cdga::new(cdga.generators().to_vec(), diff)
}

/// Minimalize, reduce exact parts, adapt bases.
pub fn normal_form(cdga: &Cdga) -> Result<Cdga> {
    let minimal = minimalize_cdga(cdga)?;
    let reduced = reduce_exact_parts(&minimal)?;
    let adapted = adapt_bases(&reduced)?;
    debug_assert!(adapted.check_d_squared().is_pass());
    Ok(adapted)
}

/// Connected pieces of the graph joining each generator to the generators
/// in its differential.
pub fn split_tensor_factors(cdga: &Cdga) -> Vec<Cdga> {
    let gens = cdga.generators();
    let index: BTreeMap<&Generator, usize> = gens.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut parent: Vec<usize> = (0..gens.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut j = i;
        while parent[j] != root {
            let next = parent[j];
            parent[j] = root;
            j = next;
        }
        root
    }
    for (g, p) in cdga.differentials() {
        for h in p.generators() {
            let (a, b) = (find(&mut parent, index[g]), find(&mut parent, index[&h]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<Generator>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(g.clone());
    }
    let mut parts: Vec<Vec<Generator>> = groups.into_values().collect();
    parts.sort();
    parts
        .into_iter()
        .map(|part| {
            let diff: Vec<(Generator, Polynomial)> = part.iter().map(|g| (g.clone(), cdga.d(g))).collect();
            Cdga::new(part, diff).expect("a part is closed under d")
        })
        .collect()
}

/// Dimensions of the lower central series of the Lie algebra dual to the
/// degree-1 generators, ending with the first repeated or zero entry.
pub fn lower_central_series(cdga: &Cdga) -> Vec<usize> {
    let gens: Vec<Generator> = cdga.generators().iter().filter(|g| g.degree() == 1).cloned().collect();
    let r = gens.len();
    let pos: BTreeMap<&Generator, usize> = gens.iter().enumerate().map(|(i, g)| (g, i)).collect();
    // bracket[i][j] as a vector over the dual basis
    let mut bracket: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        for (m, c) in cdga.d(g).terms() {
            if let [(a, 1), (b, 1)] = m.factors() {
                if let (Some(&i), Some(&j)) = (pos.get(a), pos.get(b)) {
                    bracket.entry((i, j)).or_default().insert(k, c.clone());
                    bracket.entry((j, i)).or_default().insert(k, -c.clone());
                }
            }
        }
    }
    let apply = |i: usize, w: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (j, a) in w {
            if let Some(b) = bracket.get(&(i, *j)) {
                crate::linalg::axpy(&mut out, a, b);
            }
        }
        out
    };
    let mut dims = vec![r];
    let mut current: Vec<SparseVec> = (0..r).map(unit).collect();
    while !current.is_empty() {
        let mut next = Echelon::new();
        for w in &current {
            for i in 0..r {
                next.insert(&apply(i, w));
            }
        }
        let rank = next.rank();
        let stalled = rank == *dims.last().unwrap();
        dims.push(rank);
        if stalled {
            break;
        }
        current = next.rows().map(|(_, v)| v.clone()).collect();
    }
    dims
}

/// Basis-independent data used to recognize the ten-generator space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub generators_by_degree: BTreeMap<i32, usize>,
    pub differential_rank_by_degree: BTreeMap<i32, usize>,
    pub lower_central_series: Vec<usize>,
    pub cohomology: Vec<usize>,
}

pub fn signature(cdga: &Cdga) -> Result<Signature> {
    let mut generators_by_degree: BTreeMap<i32, usize> = BTreeMap::new();
    let mut by_degree: BTreeMap<i32, Vec<&Generator>> = BTreeMap::new();
    for g in cdga.generators() {
        *generators_by_degree.entry(g.degree()).or_default() += 1;
        by_degree.entry(g.degree()).or_default().push(g);
    }
    let mut differential_rank_by_degree = BTreeMap::new();
    for (deg, gs) in by_degree {
        let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut e = Echelon::new();
        for g in gs {
            let v: SparseVec = cdga
                .d(g)
                .terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect();
            e.insert(&v);
        }
        differential_rank_by_degree.insert(deg, e.rank());
    }
    Ok(Signature {
        generators_by_degree,
        differential_rank_by_degree,
        lower_central_series: lower_central_series(cdga),
        cohomology: cohomology_dims(cdga, 4)?,
    })
}

/// Model of the fibration `(S^1)^2 × K(Q,2)^3 → X → (S^1)^3 × S^2`: base
/// `Λ(p1, p2, p3, x, y)` with `dy = x²`, fibre generators `s1, s2` of degree
/// 1 and `q1, q2, q3` of degree 2 with `ds1 = p1p2 + p1p3`,
/// `ds2 = p1p2 - p2p3`, `dq_i = p_i x`.
pub fn space_x_model() -> Cdga {
    let g = |n: &str, d: i32| Generator::new(n, d);
    let (x, y) = (g("x", 2), g("y", 3));
    let p: Vec<Generator> = (1..=3).map(|i| g(&format!("p{i}"), 1)).collect();
    let q: Vec<Generator> = (1..=3).map(|i| g(&format!("q{i}"), 2)).collect();
    let s: Vec<Generator> = (1..=2).map(|i| g(&format!("s{i}"), 1)).collect();
    let w = |a: &Generator, b: &Generator, c: i64| Polynomial::from_word(&[a.clone(), b.clone()], Scalar::from_int(c));
    let mut diff = vec![
        (y.clone(), w(&x, &x, 1)),
        (s[0].clone(), &w(&p[0], &p[1], 1) + &w(&p[0], &p[2], 1)),
        (s[1].clone(), &w(&p[0], &p[1], 1) - &w(&p[1], &p[2], 1)),
    ];
    for i in 0..3 {
        diff.push((q[i].clone(), w(&p[i], &x, 1)));
    }
    let gens = [x, y].into_iter().chain(p).chain(q).chain(s);
    Cdga::new(gens, diff).expect("well-formed")
}

/// Name a minimal, coupling-connected model.
pub fn classify_factor(cdga: &Cdga) -> Result<Factor> {
    if !cdga.is_minimal() {
        return Err(Error::NonMinimal(format!(
            "{} generators, some differential has a linear term",
            cdga.len()
        )));
    }
    let gens = cdga.generators();
    let unrecognized = || Factor::Unrecognized {
        model: serde_json::to_string(&CdgaDocument::from_cdga(cdga)).expect("documents serialize"),
    };
    if gens.len() == 1 && cdga.d(&gens[0]).is_zero() && gens[0].degree() >= 1 {
        return Ok(em(gens[0].degree() as u32));
    }
    if gens.len() == 2 {
        let (x, y) = if gens[0].degree() < gens[1].degree() {
            (&gens[0], &gens[1])
        } else {
            (&gens[1], &gens[0])
        };
        let n = x.degree();
        let dy = cdga.d(y);
        let square = Monomial::generator(x).mul(&Monomial::generator(x));
        if n >= 2 && n % 2 == 0 && y.degree() == 2 * n - 1 && cdga.d(x).is_zero() && dy.len() == 1 {
            if let Some((_, sq)) = square {
                if !dy.coefficient(&sq).is_zero() {
                    return Ok(sphere(n as u32));
                }
            }
        }
    }
    if gens.iter().all(|g| g.degree() == 1) {
        match lower_central_series(cdga).as_slice() {
            [3, 1, 0] => return Ok(Factor::Heisenberg),
            [5, 2, 0] => return Ok(Factor::NilmanifoldY),
            _ => return Ok(unrecognized()),
        }
    }
    if gens.len() == 10 && signature(cdga)? == signature(&space_x_model())? {
        return Ok(Factor::SpaceX);
    }
    Ok(unrecognized())
}

/// Factors of a minimal model, one per connected piece.
pub fn classify_model(cdga: &Cdga) -> Result<Vec<(Factor, Vec<Generator>)>> {
    split_tensor_factors(cdga)
        .into_iter()
        .map(|part| Ok((classify_factor(&part)?, part.generators().to_vec())))
        .collect()
}

/// Homotopy type of one component as a product of named factors.
///
/// A single odd generator is shown as a sphere when it comes from the
/// target's own generator, or, for the 2-sphere as target, when it has
/// degree 1.
pub fn component_type(model: &MappingModel, u: &Augmentation, n: i32) -> Result<Vec<(Factor, u32)>> {
    let c = component_model(model, u)?;
    let nf = normal_form(&c.cdga)?;
    let base: BTreeSet<String> = model
        .provenance()
        .iter()
        .filter(|(_, p)| p.beta == "1")
        .map(|(full, _)| model.display_name(&model.cdga().generator(full).expect("known generator")))
        .collect();
    let mut out = Vec::new();
    for (factor, gens) in classify_model(&nf)? {
        let shown = match factor {
            Factor::EilenbergMacLane { degree } if degree % 2 == 1 => {
                let from_base = gens.len() == 1 && base.contains(gens[0].name());
                if from_base || (degree == 1 && n == 2) {
                    sphere(degree)
                } else {
                    factor
                }
            }
            other => other,
        };
        out.push((shown, 1));
    }
    Ok(out)
}

fn generic_parameters(dim: usize, seed: usize) -> Vec<Scalar> {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    (0..dim)
        .map(|i| Scalar::from_int(PRIMES[(i * 2 + seed) % PRIMES.len()] * (1 + (i / PRIMES.len()) as i64)))
        .collect()
}

/// A sampled component: where it sits and what it is.
#[derive(Clone, Debug)]
pub struct SampledComponent {
    pub augmentation: Augmentation,
    /// Index of the family for generic samples, `None` for special points.
    pub family: Option<usize>,
    pub factors: Vec<(Factor, u32)>,
}

/// Types of the components at generic points of each family and at the
/// special points: the zero augmentation and zero-dimensional intersections
/// of families.
pub fn sample_components(model: &MappingModel, families: &[AugmentationFamily], n: i32) -> Result<Vec<SampledComponent>> {
    let mut out = Vec::new();
    let mut special: BTreeSet<Augmentation> = BTreeSet::new();
    special.insert(Augmentation::zero());
    for (i, f) in families.iter().enumerate() {
        if f.dimension() == 0 {
            special.insert(f.point(&[]));
            continue;
        }
        for seed in 0..2 {
            let u = f.point(&generic_parameters(f.dimension(), seed));
            out.push(SampledComponent {
                factors: component_type(model, &u, n)?,
                augmentation: u,
                family: Some(i),
            });
        }
        for g in &families[i + 1..] {
            if let Some(meet) = f.intersect(g) {
                if meet.dimension() == 0 {
                    special.insert(meet.point(&[]));
                }
            }
        }
    }
    for u in special {
        out.push(SampledComponent {
            factors: component_type(model, &u, n)?,
            augmentation: u,
            family: None,
        });
    }
    Ok(out)
}

fn merged(factors: &[(Factor, u32)]) -> BTreeMap<Factor, u32> {
    let mut out = BTreeMap::new();
    for (f, e) in factors {
        *out.entry(f.clone()).or_default() += e;
    }
    out
}

/// Note attached when several families occur and `k ≥ 4`.
pub const FAMILY_CAVEAT: &str =
    "components from different augmentation families are listed separately; their rational equivalence is not decided";

/// Note attached when the two generic samples of a family disagree.
pub const GENERIC_CAVEAT: &str = "generic points of one family gave different types; the first is reported";

/// The rational homotopy type of `map(F(R^m, k), S^n)` or its pointed
/// version, assembled from the components.
pub fn full_type(m: usize, k: usize, n: i32, pointed: bool, max_k: usize) -> Result<HomotopyTypeDescriptor> {
    let model = sphere_mapping_model(m, k, n, pointed, max_k)?;
    let families = enumerate_augmentation_families(&degree_zero_system(&model))?;
    let samples = sample_components(&model, &families, n)?;
    let mut countable: Vec<BTreeMap<Factor, u32>> = Vec::new();
    let mut notes = Vec::new();
    for (i, _) in families.iter().enumerate() {
        let types: Vec<BTreeMap<Factor, u32>> = samples
            .iter()
            .filter(|s| s.family == Some(i))
            .map(|s| merged(&s.factors))
            .collect();
        if let Some(first) = types.first() {
            if types.iter().any(|t| t != first) && !notes.contains(&GENERIC_CAVEAT.to_string()) {
                notes.push(GENERIC_CAVEAT.to_string());
            }
            if !countable.contains(first) {
                countable.push(first.clone());
            }
        }
    }
    let mut finite: BTreeMap<BTreeMap<Factor, u32>, u32> = BTreeMap::new();
    for s in samples.iter().filter(|s| s.family.is_none()) {
        let t = merged(&s.factors);
        if !countable.contains(&t) {
            *finite.entry(t).or_default() += 1;
        }
    }
    let summands = countable
        .into_iter()
        .map(|t| Summand::new(Multiplicity::CountablyMany, t))
        .chain(finite.into_iter().map(|(t, c)| Summand::new(Multiplicity::Finite(c), t)));
    let mut d = HomotopyTypeDescriptor::new(summands);
    if k >= 4 && n % 2 == 0 && families.len() > 1 {
        d.notes.push(FAMILY_CAVEAT.to_string());
    }
    d.notes.extend(notes);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config_space::DEFAULT_MAX_K;
    use crate::descriptor::HomotopyTypeDescriptor as D;

    fn g(name: &str, d: i32) -> Generator {
        Generator::new(name, d)
    }

    fn word(gs: &[&Generator], c: i64) -> Polynomial {
        let v: Vec<Generator> = gs.iter().map(|g| (*g).clone()).collect();
        Polynomial::from_word(&v, Scalar::from_int(c))
    }

    fn full(m: usize, n: i32, pointed: bool) -> D {
        full_type(m, 3, n, pointed, DEFAULT_MAX_K).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        let mm = sphere_mapping_model(4, 3, 2, false, 6).unwrap();
        let c = component_model(&mm, &Augmentation::parse(&mm, "q1=1,q3=-2").unwrap()).unwrap();
        let min = minimalize(&c).unwrap();
        assert_eq!(min.cdga, crate::gca::sphere_model(2).unwrap());
        assert_eq!(minimalize(&min).unwrap(), min);

        let mm = sphere_mapping_model(2, 3, 2, false, 6).unwrap();
        let c = component_model(&mm, &Augmentation::parse(&mm, "r1=1,r2=3").unwrap()).unwrap();
        let nf = normal_form(&c.cdga).unwrap();
        let counts = signature(&nf).unwrap().generators_by_degree;
        assert_eq!(counts, BTreeMap::from([(1, 4), (2, 3), (3, 1)]));
        let nontrivial: Vec<_> = nf.differentials().collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].0.degree(), 1);
        assert_eq!(nontrivial[0].1.len(), 1);
        assert_eq!(nontrivial[0].1.terms().next().unwrap().0.word_length(), 2);
    }

    #[test]
    fn minimalize_keeps_cohomology() {
        for (m, aug) in [(2, "r1=1"), (2, "r2=-1"), (2, ""), (3, "p1=2"), (3, ""), (4, "q2=1")] {
            let mm = sphere_mapping_model(m, 3, 2, false, 6).unwrap();
            let c = component_model(&mm, &Augmentation::parse(&mm, aug).unwrap()).unwrap();
            let before = cohomology_dims(&c.cdga, 4).unwrap();
            let after = cohomology_dims(&normal_form(&c.cdga).unwrap(), 4).unwrap();
            assert_eq!(before, after, "m={m} {aug}");
        }
    }

    #[test]
    fn splitting() {
        let (x, y) = (g("x", 2), g("y", 3));
        let qs: Vec<Generator> = (1..=3).map(|i| g(&format!("q{i}"), 1)).collect();
        let gens: Vec<Generator> = [x.clone(), y.clone()].into_iter().chain(qs).collect();
        let a = Cdga::new(gens, [(y.clone(), word(&[&x, &x], 1))]).unwrap();
        let parts = split_tensor_factors(&a);
        let names: Vec<Vec<String>> = parts
            .iter()
            .map(|p| p.generators().iter().map(|g| g.name().to_string()).collect())
            .collect();
        assert_eq!(names, [vec!["q1"], vec!["q2"], vec!["q3"], vec!["x", "y"]]);
        let single = Cdga::new([x.clone()], []).unwrap();
        assert_eq!(split_tensor_factors(&single), vec![single]);
    }

    #[test]
    fn named_factors() {
        let (a, b, c, x, y, t) = (g("a", 1), g("b", 1), g("c", 1), g("x", 1), g("y", 1), g("t", 1));
        let ynil = Cdga::new(
            [a.clone(), b.clone(), c.clone(), x.clone(), y.clone()],
            [(x.clone(), word(&[&a, &b], 1)), (y.clone(), word(&[&b, &c], 1))],
        )
        .unwrap();
        assert_eq!(classify_factor(&ynil).unwrap(), Factor::NilmanifoldY);
        let he = Cdga::new([x.clone(), y.clone(), t.clone()], [(t.clone(), word(&[&x, &y], 1))]).unwrap();
        assert_eq!(classify_factor(&he).unwrap(), Factor::Heisenberg);
        let s3 = Cdga::new([g("x", 3)], []).unwrap();
        assert_eq!(classify_factor(&s3).unwrap(), em(3));
        assert_eq!(classify_factor(&crate::gca::sphere_model(4).unwrap()).unwrap(), sphere(4));
        assert_eq!(classify_factor(&space_x_model()).unwrap(), Factor::SpaceX);
        let nonmin = Cdga::new([g("u", 1), g("v", 2)], [(g("u", 1), Polynomial::var(&g("v", 2)))]).unwrap();
        assert!(matches!(classify_factor(&nonmin), Err(Error::NonMinimal(_))));
        let odd = Cdga::new([g("u", 1), g("v", 1)], [(g("v", 1), Polynomial::zero())]).unwrap();
        assert!(matches!(classify_factor(&odd).unwrap(), Factor::Unrecognized { .. }));
    }

    #[test]
    fn zero_component_is_space_x() {
        let mm = sphere_mapping_model(2, 3, 2, false, 6).unwrap();
        let c = component_model(&mm, &Augmentation::zero()).unwrap();
        let nf = normal_form(&c.cdga).unwrap();
        assert_eq!(split_tensor_factors(&nf).len(), 1);
        assert_eq!(classify_factor(&nf).unwrap(), Factor::SpaceX);
    }

    #[test]
    fn full_types_for_three_points() {
        assert_eq!(full(3, 2, false).to_string(), "((S^1)^3 x S^2) ⊔ ⊔_N ((S^1)^2 x S^3)");
        assert_eq!(full(3, 2, true).to_string(), "⊔_N (S^1)^3");
        assert_eq!(full(2, 2, true).to_string(), "⊔_N (Y x K(Q,2)^3)");
        assert_eq!(full(2, 2, false).to_string(), "X ⊔ ⊔_N (S^1 x S^3 x H_e x K(Q,2)^3)");
        assert_eq!(full(4, 2, false).to_string(), "⊔_N S^2");
        assert_eq!(full(4, 2, true).to_string(), "⊔_N *");
        assert_eq!(full(5, 2, false).to_string(), "S^2");
        assert_eq!(full(6, 4, false).to_string(), "S^4 x K(Q,2)^3");
        assert_eq!(full(7, 4, true).to_string(), "K(Q,1)^3");
        assert_eq!(full(5, 4, false).to_string(), "(S^4 x K(Q,3)^3) ⊔ ⊔_N (S^7 x K(Q,3)^2)");
        assert_eq!(full(3, 5, true).to_string(), "K(Q,3)^3 x K(Q,1)^2");
    }
}
