//! Graded duals of finite-dimensional algebras.
//!
//! The dual of a class of degree `n` sits in degree `-n`. With the pairing
//! `<β ⊗ β', b ⊗ b'> = (-1)^{|β'||b|} <β, b><β', b'>` the coproduct of the
//! dual basis is
//! `Δ(c*) = Σ (-1)^{|a||b|} μ(a, b; c) a* ⊗ b*`, where `μ` are the structure
//! constants of the algebra.

use std::collections::BTreeMap;

use crate::algebra::{BasisElement, FiniteGradedAlgebra};
use crate::scalar::Scalar;

/// A coproduct term `left ⊗ right` with its coefficient.
pub type CoproductTerm = (usize, usize, Scalar);

/// A tensor word of basis indices with its coefficient.
pub type TensorTerm = (Vec<usize>, Scalar);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCoalgebra {
    /// Dual basis; `label` is the dual name, `degree` is non-positive.
    basis: Vec<BasisElement>,
    coproduct: Vec<Vec<CoproductTerm>>,
    /// Index of the dual unit, absent for the reduced coalgebra.
    counit: Option<usize>,
    /// Position of each element in the primal basis.
    primal: Vec<usize>,
}

/// Dualize `b`. With `pointed`, drop the dual unit and use the reduced
/// coproduct `Δ̄β = Δβ - 1⊗β - β⊗1`.
pub fn dualize(b: &FiniteGradedAlgebra, pointed: bool) -> GradedCoalgebra {
    let unit = b.unit();
    let primal: Vec<usize> = (0..b.dim()).filter(|&i| !(pointed && i == unit)).collect();
    let position: BTreeMap<usize, usize> = primal.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let basis: Vec<BasisElement> = primal
        .iter()
        .map(|&i| {
            let e = &b.basis()[i];
            BasisElement {
                label: e.dual_label.clone(),
                dual_label: e.label.clone(),
                degree: -e.degree,
            }
        })
        .collect();
    let mut coproduct: Vec<Vec<CoproductTerm>> = vec![Vec::new(); primal.len()];
    for (&(x, y), comb) in b.table() {
        let (Some(&px), Some(&py)) = (position.get(&x), position.get(&y)) else {
            continue;
        };
        let sign = Scalar::sign_power(b.degree(x) as i64 * b.degree(y) as i64);
        for (c, mu) in comb {
            if let Some(&pc) = position.get(c) {
                coproduct[pc].push((px, py, mu * &sign));
            }
        }
    }
    for terms in coproduct.iter_mut() {
        terms.sort_by_key(|a| (a.0, a.1));
    }
    GradedCoalgebra {
        basis,
        coproduct,
        counit: if pointed { None } else { position.get(&unit).copied() },
        primal,
    }
}

impl GradedCoalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn is_reduced(&self) -> bool {
        self.counit.is_none()
    }

    /// The dual unit, when present.
    pub fn unit(&self) -> Option<usize> {
        self.counit
    }

    /// Index of element `i` in the algebra it was dualized from.
    pub fn primal_index(&self, i: usize) -> usize {
        self.primal[i]
    }

    pub fn coproduct(&self, i: usize) -> &[CoproductTerm] {
        &self.coproduct[i]
    }

    /// Counit: 1 on the dual unit, 0 elsewhere.
    pub fn counit(&self, i: usize) -> Scalar {
        if Some(i) == self.counit {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// The `s`-fold coproduct, expanding the last tensor factor at each step:
    /// `(id ⊗ ... ⊗ Δ) ∘ ... ∘ Δ`.
    pub fn iterated_coproduct(&self, beta: usize, s: usize) -> Vec<TensorTerm> {
        self.iterate(beta, s, true)
    }

    /// The `s`-fold coproduct, expanding the first tensor factor at each step.
    pub fn iterated_coproduct_left(&self, beta: usize, s: usize) -> Vec<TensorTerm> {
        self.iterate(beta, s, false)
    }

    fn iterate(&self, beta: usize, s: usize, right: bool) -> Vec<TensorTerm> {
        assert!(s >= 1, "iterated coproduct needs at least one factor");
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::from([(vec![beta], Scalar::one())]);
        for _ in 1..s {
            let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (word, c) in acc {
                let pos = if right { word.len() - 1 } else { 0 };
                for (l, r, k) in self.coproduct(word[pos]) {
                    let mut w = word[..pos].to_vec();
                    w.push(*l);
                    w.push(*r);
                    w.extend_from_slice(&word[pos + 1..]);
                    let entry = next.entry(w).or_insert_with(Scalar::zero);
                    *entry += &(&c * k);
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        acc.into_iter().collect()
    }

    /// Elements on which `(Δ ⊗ id)Δ` and `(id ⊗ Δ)Δ` differ.
    pub fn coassociativity_failures(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.iterated_coproduct(i, 3) != self.iterated_coproduct_left(i, 3))
            .collect()
    }

    /// Elements where counitality fails; always empty for reduced coalgebras.
    pub fn counit_failures(&self) -> Vec<usize> {
        let Some(u) = self.counit else { return Vec::new() };
        (0..self.dim())
            .filter(|&i| {
                let left: Scalar = self
                    .coproduct(i)
                    .iter()
                    .filter(|(l, r, _)| *l == u && *r == i)
                    .map(|(_, _, c)| c.clone())
                    .fold(Scalar::zero(), |a, b| a + b);
                let right: Scalar = self
                    .coproduct(i)
                    .iter()
                    .filter(|(l, r, _)| *r == u && *l == i)
                    .map(|(_, _, c)| c.clone())
                    .fold(Scalar::zero(), |a, b| a + b);
                !left.is_one() || !right.is_one()
            })
            .collect()
    }
}
