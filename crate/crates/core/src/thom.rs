//! Closed forms for mapping spaces into rational H-spaces.
//!
//! When the target is a product of Eilenberg-MacLane spaces, each component
//! of the mapping space is again such a product, with `N_j` factors
//! `K(Q, j)`, where `N_j = Σ_{r - s = j} dim π_r(Y) ⊗ Q · dim H^s(X; Q)`.
//! For pointed maps the sum runs over `s ≠ 0`. There are infinitely many
//! components exactly when `N_0 ≠ 0`.

use std::collections::BTreeMap;

use crate::config_space::{poincare_series, stirling};
use crate::descriptor::{em, sphere, Factor, HomotopyTypeDescriptor};
use crate::error::{Error, Result};

/// `j ↦ N_j` for `j ≥ 0`, omitting zeros.
pub fn thom_numbers(
    homology: &BTreeMap<i32, u128>,
    homotopy: &BTreeMap<i32, u128>,
    pointed: bool,
) -> BTreeMap<i32, u128> {
    let mut out: BTreeMap<i32, u128> = BTreeMap::new();
    for (&r, &pi) in homotopy {
        for (&s, &h) in homology {
            if pointed && s == 0 {
                continue;
            }
            let j = r - s;
            if j >= 0 && pi * h != 0 {
                *out.entry(j).or_default() += pi * h;
            }
        }
    }
    out
}

/// `N_j` for `F(R^m, k)` and an odd sphere.
pub fn sphere_thom_numbers(m: usize, k: usize, n: i32, pointed: bool) -> Result<BTreeMap<i32, u128>> {
    let homology: BTreeMap<i32, u128> = poincare_series(m, k)?.into_iter().collect();
    Ok(thom_numbers(&homology, &BTreeMap::from([(n, 1)]), pointed))
}

/// Descriptor read off from the `N_j`; the `K(Q, n)` factor of the free
/// space is labelled `S^n`.
pub fn decomposition_from_numbers(numbers: &BTreeMap<i32, u128>, n: i32, pointed: bool) -> HomotopyTypeDescriptor {
    let factors: Vec<(Factor, u32)> = numbers
        .iter()
        .filter(|(j, _)| **j >= 1)
        .map(|(&j, &c)| {
            let f = if j == n && !pointed { sphere(j as u32) } else { em(j as u32) };
            (f, c as u32)
        })
        .collect();
    if numbers.get(&0).copied().unwrap_or(0) != 0 {
        HomotopyTypeDescriptor::countably_many(factors)
    } else {
        HomotopyTypeDescriptor::single(factors)
    }
}

/// Position of `n` relative to the multiples of `m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `n > (k-1)(m-1)`.
    Above,
    /// `n = l(m-1)`, `1 ≤ l ≤ k-1`.
    Multiple(usize),
    /// `l(m-1) < n < (l+1)(m-1)`, `1 ≤ l ≤ k-2`.
    Between(usize),
    /// `n < m - 1`.
    Below,
}

pub fn branch(m: usize, k: usize, n: i32) -> Branch {
    let step = (m - 1) as i64;
    let n = n as i64;
    if n > (k as i64 - 1) * step {
        Branch::Above
    } else if n < step {
        Branch::Below
    } else if n % step == 0 {
        Branch::Multiple((n / step) as usize)
    } else {
        Branch::Between((n / step) as usize)
    }
}

fn stirling_product(m: usize, k: usize, n: i32, js: std::ops::RangeInclusive<usize>) -> Result<Vec<(Factor, u32)>> {
    let mut out = Vec::new();
    for j in js {
        let degree = n - (j * (m - 1)) as i32;
        let exponent = u32::try_from(stirling(k, k - j)?)
            .map_err(|_| Error::Unsupported(format!("exponent [{k}, {}] too large", k - j)))?;
        let f = if j == 0 { sphere(degree as u32) } else { em(degree as u32) };
        out.push((f, exponent));
    }
    Ok(out)
}

/// The closed-form type of `map(F(R^m, k), S^n)` (or the pointed space) for
/// odd `n`, with exponents given by Stirling numbers of the first kind.
pub fn thom_decomposition(m: usize, k: usize, n: i32, pointed: bool) -> Result<HomotopyTypeDescriptor> {
    if m < 2 || k < 2 || n < 1 {
        return Err(Error::Precondition(format!("need m, k >= 2 and n >= 1, got m={m}, k={k}, n={n}")));
    }
    if n % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "S^{n} is not a rational H-space; use the full pipeline"
        )));
    }
    let first = usize::from(pointed);
    let range = |last: usize| first..=last;
    let empty = |last: isize| (last as i64) < first as i64;
    Ok(match branch(m, k, n) {
        Branch::Above => HomotopyTypeDescriptor::single(stirling_product(m, k, n, range(k - 1))?),
        Branch::Multiple(l) => {
            if empty(l as isize - 1) {
                HomotopyTypeDescriptor::countably_many([])
            } else {
                HomotopyTypeDescriptor::countably_many(stirling_product(m, k, n, range(l - 1))?)
            }
        }
        Branch::Between(l) => HomotopyTypeDescriptor::single(stirling_product(m, k, n, range(l))?),
        Branch::Below => {
            if pointed {
                HomotopyTypeDescriptor::single([])
            } else {
                HomotopyTypeDescriptor::single([(sphere(n as u32), 1)])
            }
        }
    })
}

/// Target dimension `(m-1)(k-1) - 1` for which the corollary applies.
pub fn corollary_dimension(m: usize, k: usize) -> i32 {
    ((m - 1) * (k - 1)) as i32 - 1
}

/// Free and pointed types of `map(F(R^m, k), S^{(m-1)(k-1)-1})` when `m` or
/// `k` is odd.
pub fn corollary_case(m: usize, k: usize) -> Result<(HomotopyTypeDescriptor, HomotopyTypeDescriptor)> {
    if m < 2 || k < 2 {
        return Err(Error::Precondition(format!("need m, k >= 2, got m={m}, k={k}")));
    }
    if m.is_multiple_of(2) && k.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "m={m} and k={k} are both even, so the target sphere S^{} has even dimension",
            corollary_dimension(m, k)
        )));
    }
    let power = |j: usize, degree: i64| -> Result<(Factor, u32)> {
        let e = u32::try_from(stirling(k, k - j)?)
            .map_err(|_| Error::Unsupported(format!("exponent [{k}, {}] too large", k - j)))?;
        Ok((em(degree as u32), e))
    };
    let product = |from: usize, to: i64, degree: &dyn Fn(usize) -> i64| -> Result<Vec<(Factor, u32)>> {
        let mut out = Vec::new();
        let mut j = from;
        while (j as i64) <= to {
            out.push(power(j, degree(j))?);
            j += 1;
        }
        Ok(out)
    };
    let k_i = k as i64;
    if m >= 3 {
        let degree = |j: usize| (k_i - (j as i64 + 1)) * (m as i64 - 1) - 1;
        Ok((
            HomotopyTypeDescriptor::single(product(0, k_i - 2, &degree)?),
            HomotopyTypeDescriptor::single(product(1, k_i - 2, &degree)?),
        ))
    } else {
        let degree = |j: usize| k_i - (2 + j as i64);
        Ok((
            HomotopyTypeDescriptor::countably_many(product(0, k_i - 3, &degree)?),
            HomotopyTypeDescriptor::countably_many(product(1, k_i - 3, &degree)?),
        ))
    }
}
