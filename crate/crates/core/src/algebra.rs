//! Finite-dimensional graded algebras given by structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear combination of basis elements, as (index, coefficient) pairs
/// sorted by index with no zero coefficients.
pub type Combination = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    /// Name of the class, e.g. `a12*a23`.
    pub label: String,
    /// Name of the dual class, e.g. `a12.23`.
    pub dual_label: String,
    pub degree: i32,
}

/// A unital, finite-dimensional graded algebra `B` with a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGradedAlgebra {
    basis: Vec<BasisElement>,
    unit: usize,
    table: BTreeMap<(usize, usize), Combination>,
}

impl FiniteGradedAlgebra {
    /// Assemble an algebra from its multiplication table. Products missing from
    /// `table` are zero; products with the unit are filled in automatically.
    pub fn new(
        basis: Vec<BasisElement>,
        unit: usize,
        table: impl IntoIterator<Item = ((usize, usize), Combination)>,
    ) -> Result<Self> {
        if unit >= basis.len() || basis[unit].degree != 0 {
            return Err(Error::Precondition("unit must be a degree-0 basis element".into()));
        }
        let mut t: BTreeMap<(usize, usize), Combination> = BTreeMap::new();
        for ((a, b), comb) in table {
            if a >= basis.len() || b >= basis.len() {
                return Err(Error::Precondition(format!("table entry ({a}, {b}) out of range")));
            }
            let comb: Combination = comb.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            for (c, _) in &comb {
                if basis[*c].degree != basis[a].degree + basis[b].degree {
                    return Err(Error::Precondition(format!(
                        "product {} * {} is not homogeneous",
                        basis[a].label, basis[b].label
                    )));
                }
            }
            if !comb.is_empty() {
                t.insert((a, b), comb);
            }
        }
        for i in 0..basis.len() {
            t.insert((unit, i), vec![(i, Scalar::one())]);
            t.insert((i, unit), vec![(i, Scalar::one())]);
        }
        Ok(FiniteGradedAlgebra {
            basis,
            unit,
            table: t,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// `e_a * e_b` in the basis.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        self.table.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Structure constant: coefficient of `e_c` in `e_a * e_b`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.product(a, b)
            .iter()
            .find(|(i, _)| *i == c)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Nonzero products.
    pub fn table(&self) -> impl Iterator<Item = (&(usize, usize), &Combination)> {
        self.table.iter()
    }

    pub fn multiply(&self, x: &Combination, y: &Combination) -> Combination {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, k) in self.product(*a, *b) {
                    *acc.entry(*c).or_insert_with(Scalar::zero) += &(&(ca * cb) * k);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// (degree, dimension) for every degree with nonzero dimension.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    /// Basis triples violating associativity.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b).to_vec();
                for c in 0..n {
                    let bc = self.product(b, c).to_vec();
                    let left = self.multiply(&ab, &vec![(c, Scalar::one())]);
                    let right = self.multiply(&vec![(a, Scalar::one())], &bc);
                    if left != right {
                        bad.push((a, b, c));
                    }
                }
            }
        }
        bad
    }

    /// Basis pairs violating `e_a e_b = (-1)^{|a||b|} e_b e_a`.
    pub fn commutativity_failures(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let sign = Scalar::sign_power(self.degree(a) as i64 * self.degree(b) as i64);
                let ba: Combination = self
                    .product(b, a)
                    .iter()
                    .map(|(i, c)| (*i, c * &sign))
                    .collect();
                if self.product(a, b) != ba.as_slice() {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior_on_one() -> FiniteGradedAlgebra {
        let basis = vec![
            BasisElement { label: "1".into(), dual_label: "1".into(), degree: 0 },
            BasisElement { label: "e".into(), dual_label: "e".into(), degree: 3 },
        ];
        FiniteGradedAlgebra::new(basis, 0, []).unwrap()
    }

    #[test]
    fn unit_products_filled_in() {
        let b = exterior_on_one();
        assert_eq!(b.product(0, 1), &[(1, Scalar::one())]);
        assert!(b.product(1, 1).is_empty());
        assert!(b.associativity_failures().is_empty());
        assert!(b.commutativity_failures().is_empty());
        assert_eq!(b.dims_by_degree(), BTreeMap::from([(0, 1), (3, 1)]));
    }

    #[test]
    fn rejects_inhomogeneous_products() {
        let basis = vec![
            BasisElement { label: "1".into(), dual_label: "1".into(), degree: 0 },
            BasisElement { label: "e".into(), dual_label: "e".into(), degree: 1 },
        ];
        let err = FiniteGradedAlgebra::new(basis, 0, [((1, 1), vec![(1, Scalar::one())])]);
        assert!(err.is_err());
    }
}
