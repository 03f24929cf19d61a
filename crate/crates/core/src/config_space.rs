//! Rational cohomology of the ordered configuration space `F(R^m, k)`.
//!
//! The ring is the exterior-style algebra on classes `a_ij` (`i < j`) of degree
//! `m - 1`, modulo squares and the three-term relations
//! `a_ij a_jr + a_jr a_ri + a_ri a_ij` with `a_ji = (-1)^m a_ij`. The quotient
//! is computed degree by degree with exact row reduction over square-free
//! monomials. The basis consists of the products
//! `a_{i1 j1} a_{i2 j2} ... ` with `i1 < i2 < ...`; the elimination confirms
//! that these span and are independent.

use std::collections::BTreeMap;

use crate::algebra::{BasisElement, Combination, FiniteGradedAlgebra};
use crate::error::{Error, Result};
use crate::gca::{normalize_monomial, Generator, Monomial, Polynomial};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::Scalar;

/// Largest `k` accepted unless the caller raises it.
pub const DEFAULT_MAX_K: usize = 6;

/// Unsigned Stirling number of the first kind `[k, j]`: the number of
/// permutations of `k` letters with `j` cycles.
pub fn stirling(k: usize, j: usize) -> Result<u128> {
    if j > k {
        return Err(Error::Precondition(format!("stirling({k}, {j}) needs j <= k")));
    }
    let mut row: Vec<u128> = vec![1];
    for n in 1..=k {
        let mut next = vec![0u128; n + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let from_smaller = if i >= 1 { row[i - 1] } else { 0 };
            let same = if i < row.len() { row[i] } else { 0 };
            *slot = (n as u128 - 1)
                .checked_mul(same)
                .and_then(|v| v.checked_add(from_smaller))
                .ok_or_else(|| Error::Unsupported(format!("stirling({k}, {j}) overflows u128")))?;
        }
        row = next;
    }
    Ok(row[j])
}

/// Coefficients of `(1 + t^{m-1})(1 + 2t^{m-1})...(1 + (k-1)t^{m-1})` as
/// `(degree, dimension)`, nonzero entries only.
pub fn poincare_series(m: usize, k: usize) -> Result<Vec<(i32, u128)>> {
    if m < 2 || k < 1 {
        return Err(Error::Precondition(format!("need m >= 2 and k >= 1, got m={m}, k={k}")));
    }
    let mut coeffs: Vec<u128> = vec![1];
    for i in 1..k {
        let mut next = vec![0u128; coeffs.len() + 1];
        for (s, c) in coeffs.iter().enumerate() {
            next[s] += c;
            next[s + 1] += c * i as u128;
        }
        coeffs = next;
    }
    Ok(coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(s, c)| ((s * (m - 1)) as i32, c))
        .collect())
}

/// `H^*(F(R^m, k); Q)` together with the data needed to rewrite arbitrary
/// words in the classes `a_ij` over the chosen basis.
#[derive(Clone, Debug)]
pub struct ConfigurationCohomology {
    m: usize,
    k: usize,
    algebra: FiniteGradedAlgebra,
    /// `a_ij` for `i < j`, keyed by `(i, j)`.
    classes: BTreeMap<(usize, usize), Generator>,
    /// Every square-free monomial of length `< k`, expressed in the basis.
    normal_forms: BTreeMap<Monomial, Combination>,
    /// Basis index -> list of index pairs of its defining product.
    pairs: Vec<Vec<(usize, usize)>>,
}

fn pair_tag(i: usize, j: usize, k: usize) -> String {
    if k <= 9 {
        format!("{i}{j}")
    } else {
        format!("{i}_{j}")
    }
}

/// Subsets of `0..n` of size `s`, in lexicographic order.
fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < s - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

/// Compute the cohomology ring with the default bound on `k`.
pub fn build_cohomology(m: usize, k: usize) -> Result<ConfigurationCohomology> {
    build_cohomology_bounded(m, k, DEFAULT_MAX_K)
}

pub fn build_cohomology_bounded(m: usize, k: usize, max_k: usize) -> Result<ConfigurationCohomology> {
    if m < 2 || k < 2 {
        return Err(Error::Precondition(format!("need m >= 2 and k >= 2, got m={m}, k={k}")));
    }
    if k > max_k {
        return Err(Error::ResourceBound { k, max: max_k });
    }
    let deg = (m - 1) as i32;
    let pair_list: Vec<(usize, usize)> = (1..=k)
        .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
        .collect();
    let classes: BTreeMap<(usize, usize), Generator> = pair_list
        .iter()
        .map(|&(i, j)| ((i, j), Generator::new(format!("a{}", pair_tag(i, j, k)), deg)))
        .collect();
    let sign_m = Scalar::sign_power(m as i64);
    // a_ij for any i != j, as a polynomial in the a_ij with i < j
    let raw = |i: usize, j: usize| -> Polynomial {
        if i < j {
            Polynomial::var(&classes[&(i, j)])
        } else {
            Polynomial::var(&classes[&(j, i)]).scale(&sign_m)
        }
    };
    let mut relations = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            for r in j + 1..=k {
                let rel = &(&(&raw(i, j) * &raw(j, r)) + &(&raw(j, r) * &raw(r, i)))
                    + &(&raw(r, i) * &raw(i, j));
                relations.push(rel);
            }
        }
    }

    // Basis: one pair per distinct first index, first indices increasing.
    let mut basis_pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    for s in 0..k {
        let mut layer = Vec::new();
        for firsts in combinations(k - 1, s) {
            let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
            for f in firsts {
                let i = f + 1;
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        (i + 1..=k).map(move |j| {
                            let mut q = p.clone();
                            q.push((i, j));
                            q
                        })
                    })
                    .collect();
            }
            layer.extend(partial);
        }
        layer.sort();
        basis_pairs.extend(layer);
    }
    let word_of = |pairs: &[(usize, usize)]| -> Vec<Generator> {
        pairs.iter().map(|p| classes[p].clone()).collect()
    };
    // basis monomial = sign * e_b
    let mut basis_monomial: BTreeMap<Monomial, (usize, Scalar)> = BTreeMap::new();
    for (b, pairs) in basis_pairs.iter().enumerate() {
        let (sign, mono) = normalize_monomial(&word_of(pairs)).expect("basis words are square-free");
        basis_monomial.insert(mono, (b, sign.to_scalar()));
    }

    let mut normal_forms: BTreeMap<Monomial, Combination> = BTreeMap::new();
    for s in 0..=k {
        let monomials: Vec<Monomial> = combinations(pair_list.len(), s)
            .into_iter()
            .map(|idx| {
                let word: Vec<Generator> = idx.iter().map(|&t| classes[&pair_list[t]].clone()).collect();
                normalize_monomial(&word).expect("distinct generators").1
            })
            .collect();
        let (basis_cols, other_cols): (Vec<&Monomial>, Vec<&Monomial>) =
            monomials.iter().partition(|mo| basis_monomial.contains_key(*mo));
        let column: BTreeMap<&Monomial, usize> = other_cols
            .iter()
            .chain(basis_cols.iter())
            .enumerate()
            .map(|(c, mo)| (*mo, c))
            .collect();
        let n_other = other_cols.len();
        let mut ech = Echelon::new();
        if s >= 2 {
            for rel in &relations {
                for idx in combinations(pair_list.len(), s - 2) {
                    let word: Vec<Generator> =
                        idx.iter().map(|&t| classes[&pair_list[t]].clone()).collect();
                    let Some((sign, mono)) = normalize_monomial(&word) else { continue };
                    let prod = rel * &Polynomial::term(mono, sign.to_scalar());
                    let row: SparseVec = prod
                        .terms()
                        .filter(|(mo, _)| mo.factors().iter().all(|(_, e)| *e == 1))
                        .map(|(mo, c)| (column[mo], c.clone()))
                        .collect();
                    if !row.is_empty() {
                        ech.insert(&row);
                    }
                }
            }
        }
        let spans = ech.rank() == n_other && ech.pivots().all(|p| p < n_other);
        assert!(
            spans,
            "relation span in word length {s} does not match the expected basis (m={m}, k={k})"
        );
        if s == k {
            break;
        }
        for mo in &basis_cols {
            let (b, sign) = &basis_monomial[*mo];
            normal_forms.insert((*mo).clone(), vec![(*b, sign.clone())]);
        }
        for (c, mo) in other_cols.iter().enumerate() {
            let row = ech.row(c).expect("every non-basis monomial is a pivot");
            let mut comb: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(col, _)| **col != c)
                .map(|(col, coef)| {
                    let (b, sign) = &basis_monomial[basis_cols[col - n_other]];
                    (*b, -(coef * sign))
                })
                .collect();
            comb.sort_by_key(|(b, _)| *b);
            normal_forms.insert((*mo).clone(), comb);
        }
    }

    let basis: Vec<BasisElement> = basis_pairs
        .iter()
        .map(|pairs| {
            if pairs.is_empty() {
                BasisElement {
                    label: "1".into(),
                    dual_label: "1".into(),
                    degree: 0,
                }
            } else {
                let tags: Vec<String> = pairs.iter().map(|&(i, j)| pair_tag(i, j, k)).collect();
                BasisElement {
                    label: tags.iter().map(|t| format!("a{t}")).collect::<Vec<_>>().join("*"),
                    dual_label: format!("a{}", tags.join(".")),
                    degree: deg * pairs.len() as i32,
                }
            }
        })
        .collect();

    let mut cc = ConfigurationCohomology {
        m,
        k,
        algebra: FiniteGradedAlgebra::new(basis.clone(), 0, [])?,
        classes,
        normal_forms,
        pairs: basis_pairs.clone(),
    };
    let mut table = Vec::new();
    for a in 1..basis_pairs.len() {
        for b in 1..basis_pairs.len() {
            let mut word = basis_pairs[a].clone();
            word.extend(basis_pairs[b].iter().copied());
            let comb = cc.reduce_to_basis(&word);
            if !comb.is_empty() {
                table.push(((a, b), comb));
            }
        }
    }
    cc.algebra = FiniteGradedAlgebra::new(basis, 0, table)?;
    Ok(cc)
}

impl ConfigurationCohomology {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn algebra(&self) -> &FiniteGradedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> FiniteGradedAlgebra {
        self.algebra
    }

    /// The index pairs whose product defines basis element `b`.
    pub fn basis_pairs(&self, b: usize) -> &[(usize, usize)] {
        &self.pairs[b]
    }

    /// Basis index of the class `a_ij` (`i < j`).
    pub fn class_index(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|p| p.as_slice() == [(i, j)])
    }

    /// Expand the product `a_{i1 j1} a_{i2 j2} ...` over the basis. Pairs may
    /// have `i > j`. Indices must be valid; see
    /// [`ConfigurationCohomology::check_word`].
    pub fn reduce_to_basis(&self, word: &[(usize, usize)]) -> Combination {
        let mut sign = Scalar::one();
        let mut gens = Vec::with_capacity(word.len());
        for &(i, j) in word {
            if i < j {
                gens.push(self.classes[&(i, j)].clone());
            } else {
                sign *= &Scalar::sign_power(self.m as i64);
                gens.push(self.classes[&(j, i)].clone());
            }
        }
        if gens.len() >= self.k {
            return Vec::new();
        }
        let Some((s, mono)) = normalize_monomial(&gens) else {
            return Vec::new();
        };
        if mono.factors().iter().any(|(_, e)| *e > 1) {
            return Vec::new();
        }
        sign *= &s.to_scalar();
        self.normal_forms[&mono]
            .iter()
            .map(|(b, c)| (*b, c * &sign))
            .collect()
    }

    /// Validate the index pairs of a word.
    pub fn check_word(&self, word: &[(usize, usize)]) -> Result<()> {
        for &(i, j) in word {
            if i == j || i == 0 || j == 0 || i > self.k || j > self.k {
                return Err(Error::Precondition(format!(
                    "a{i}{j} is not a class of F(R^{}, {})",
                    self.m, self.k
                )));
            }
        }
        Ok(())
    }
}
