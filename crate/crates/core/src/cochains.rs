//! Cohomology of free CDGAs in low degrees by direct linear algebra on the
//! monomial basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gca::{Cdga, Generator, Monomial, Polynomial};
use crate::linalg::{rank, SparseVec};
use crate::scalar::Scalar;

/// All monomials of total degree `degree` in generators of positive degree.
pub fn monomials_of_degree(generators: &[Generator], degree: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    extend(generators, 0, degree, &mut word, &mut out);
    out
}

fn extend(gens: &[Generator], from: usize, left: i32, word: &mut Vec<Generator>, out: &mut Vec<Monomial>) {
    if left == 0 {
        let p = Polynomial::from_word(word, Scalar::one());
        if let Some((m, _)) = p.terms().next() {
            out.push(m.clone());
        }
        return;
    }
    for i in from..gens.len() {
        let g = &gens[i];
        if g.degree() > left {
            continue;
        }
        word.push(g.clone());
        let next = if g.is_odd() { i + 1 } else { i };
        extend(gens, next, left - g.degree(), word, out);
        word.pop();
    }
}

/// `dim H^j` for `j = 0..=max_degree`. All generators must have positive
/// degree.
pub fn cohomology_dims(cdga: &Cdga, max_degree: i32) -> Result<Vec<usize>> {
    if let Some(g) = cdga.generators().iter().find(|g| g.degree() < 1) {
        return Err(Error::Precondition(format!("{} has degree {} < 1", g.name(), g.degree())));
    }
    let gens = cdga.generators();
    let bases: Vec<Vec<Monomial>> = (0..=max_degree + 1).map(|j| monomials_of_degree(gens, j)).collect();
    // rank of d: C^j -> C^{j+1}
    let ranks: Vec<usize> = (0..=max_degree)
        .map(|j| {
            let target: BTreeMap<&Monomial, usize> =
                bases[j as usize + 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
            let images: Vec<SparseVec> = bases[j as usize]
                .iter()
                .map(|m| {
                    let dm = cdga.apply_differential(&Polynomial::term(m.clone(), Scalar::one()));
                    dm.terms().map(|(t, c)| (target[t], c.clone())).collect()
                })
                .collect();
            rank(&images)
        })
        .collect();
    Ok((0..=max_degree as usize)
        .map(|j| bases[j].len() - ranks[j] - if j > 0 { ranks[j - 1] } else { 0 })
        .collect())
}
