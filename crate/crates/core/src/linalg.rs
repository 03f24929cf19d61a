//! Exact sparse linear algebra over the rationals.
//!
//! Everything here is built on [`Echelon`], an incrementally maintained
//! reduced row echelon form. Pivots are always the smallest nonzero column of
//! a row, so callers control elimination priority through column order.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (i, v) in x {
        let entry = y.entry(*i).or_insert_with(Scalar::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(i);
        }
    }
}

/// Fully reduced row echelon form, grown one row at a time.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    /// pivot column -> row with a 1 in that column and 0 in every other pivot column
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Reduce `v` against every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_where(v, |_| true)
    }

    /// Reduce `v` only against pivots accepted by `use_pivot`.
    pub fn reduce_where(&self, v: &SparseVec, use_pivot: impl Fn(usize) -> bool) -> SparseVec {
        let mut out = v.clone();
        // Rows are fully reduced, so a single pass over pivots suffices.
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c) && use_pivot(**c))
            .map(|(c, a)| (*c, a.clone()))
            .collect();
        for (c, a) in hits {
            let row = &self.rows[&c];
            axpy(&mut out, &-a, row);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert `v`; returns the new pivot column, or `None` if `v` was already
    /// in the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let mut r = self.reduce(v);
        let (&pivot, lead) = r.iter().next()?;
        let inv = lead.recip();
        for val in r.values_mut() {
            *val *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(a) = row.get(&pivot).cloned() {
                axpy(row, &-a, &r);
            }
        }
        self.rows.insert(pivot, r);
        Some(pivot)
    }
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending the `i`-th basis vector to `images[i]`,
/// returned as coordinate vectors over that basis. `target_dim` bounds the
/// column indices used by the images.
pub fn kernel(images: &[SparseVec], target_dim: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for (i, v) in images.iter().enumerate() {
        let mut row = v.clone();
        row.insert(target_dim + i, Scalar::one());
        e.insert(&row);
    }
    e.rows()
        .filter(|(p, _)| *p >= target_dim)
        .map(|(_, r)| {
            r.iter()
                .map(|(c, a)| (c - target_dim, a.clone()))
                .collect()
        })
        .collect()
}

/// Dense inverse of a square matrix given by rows; `None` if singular.
pub fn inverse(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    let mut a: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "inverse of a non-square matrix");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, pv) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &(&f * pv);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
