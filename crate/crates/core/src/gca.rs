//! Free graded-commutative algebras over the rationals.
//!
//! A [`Monomial`] is a product of generators kept in a canonical order (the
//! total order on [`Generator`]: name first, degree as tie-break). Moving two
//! odd-degree generators past each other costs a sign; an odd generator can
//! appear at most once. A [`Polynomial`] is a finite sum of monomials with
//! exact coefficients, and a [`Cdga`] attaches a differential to a finite set
//! of generators, extended to all polynomials by the graded Leibniz rule.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    name: Arc<str>,
    degree: i32,
}

impl Generator {
    pub fn new(name: impl AsRef<str>, degree: i32) -> Self {
        Generator {
            name: Arc::from(name.as_ref()),
            degree,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name
            .cmp(&other.name)
            .then(self.degree.cmp(&other.degree))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.degree)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_scalar(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => -Scalar::one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if rhs == Sign::Minus {
            self.flip()
        } else {
            self
        }
    }
}

/// A canonical product of generators with exponents (odd generators have
/// exponent one). The empty product is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: &Generator) -> Self {
        Monomial(vec![(g.clone(), 1)])
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(g, e)| g.degree() * *e as i32).sum()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, g: &Generator) -> u32 {
        self.0
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// The factors written out with repetition, in canonical order. Their
    /// product in this order equals the monomial with sign `+`.
    pub fn expand(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.word_length() as usize);
        for (g, e) in &self.0 {
            for _ in 0..*e {
                out.push(g.clone());
            }
        }
        out
    }

    /// Product `self * other`, or `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Sign, Monomial)> {
        let mut sign = Sign::Plus;
        // Each odd factor of `other` must pass every larger odd factor of `self`.
        for (h, _) in other.0.iter().filter(|(h, _)| h.is_odd()) {
            let crossed = self
                .0
                .iter()
                .filter(|(g, _)| g.is_odd() && g > h)
                .count();
            if crossed % 2 == 1 {
                sign = sign.flip();
            }
        }
        let mut out: Vec<(Generator, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let g = &self.0[i].0;
                    if g.is_odd() {
                        return None;
                    }
                    out.push((g.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Some((sign, Monomial(out)))
    }

    pub fn fmt_with(&self, f: &mut dyn fmt::Write, name: &dyn Fn(&Generator) -> String) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, (g, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_char('*')?;
            }
            f.write_str(&name(g))?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|g| g.name().to_string())
    }
}

/// Sort a word of generators into canonical order.
///
/// Returns `None` when an odd generator occurs twice (the product vanishes);
/// otherwise the sign picked up by the odd-odd transpositions.
pub fn normalize_monomial(factors: &[Generator]) -> Option<(Sign, Monomial)> {
    let mut word: Vec<Generator> = factors.to_vec();
    let mut sign = Sign::Plus;
    // Insertion sort, so every swap is a single adjacent transposition.
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            if word[j - 1].is_odd() && word[j].is_odd() {
                sign = sign.flip();
            }
            word.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut out: Vec<(Generator, u32)> = Vec::new();
    for g in word {
        match out.last_mut() {
            Some((h, e)) if *h == g => {
                if g.is_odd() {
                    return None;
                }
                *e += 1;
            }
            _ => out.push((g, 1)),
        }
    }
    Some((sign, Monomial(out)))
}

/// A finite linear combination of monomials.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn var(g: &Generator) -> Self {
        Polynomial::term(Monomial::generator(g), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// The product of `word` in the given order, times `c`.
    pub fn from_word(word: &[Generator], c: Scalar) -> Self {
        match normalize_monomial(word) {
            Some((sign, m)) => Polynomial::term(m, c * sign.to_scalar()),
            None => Polynomial::zero(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degree shared by all terms; `None` for zero or inhomogeneous input.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn term_degrees(&self) -> BTreeSet<i32> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(g, _)| g.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Scalar) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one())
    }

    /// Coefficients of the word-length-one terms.
    pub fn linear_part(&self) -> BTreeMap<Generator, Scalar> {
        self.terms
            .iter()
            .filter(|(m, _)| m.word_length() == 1)
            .map(|(m, c)| (m.factors()[0].0.clone(), c.clone()))
            .collect()
    }

    /// Terms of word length at least two.
    pub fn decomposable_part(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word_length() >= 2)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_decomposable(&self) -> bool {
        self.terms.keys().all(|m| m.word_length() >= 2)
    }

    /// Algebra map on generators: each generator `g` with `f(g) = Some(p)`
    /// is replaced by `p`, the others are left alone. Factor order is
    /// preserved, so Koszul signs come out of the products.
    pub fn substitute(&self, f: &dyn Fn(&Generator) -> Option<Polynomial>) -> Polynomial {
        let mut cache: BTreeMap<Generator, Option<Polynomial>> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (g, _) in m.factors() {
                if !cache.contains_key(g) {
                    cache.insert(g.clone(), f(g));
                }
            }
            if m.factors().iter().all(|(g, _)| cache[g].is_none()) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut acc = Polynomial::constant(c.clone());
            for g in m.expand() {
                let image = match &cache[&g] {
                    Some(p) => p.clone(),
                    None => Polynomial::var(&g),
                };
                acc = &acc * &image;
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    pub fn rename(&self, f: &dyn Fn(&Generator) -> Generator) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let word: Vec<Generator> = m.expand().iter().map(f).collect();
            out += &Polynomial::from_word(&word, c.clone());
        }
        out
    }

    pub fn fmt_with(&self, name: &dyn Fn(&Generator) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                let _ = m.fmt_with(&mut s, name);
            }
        }
        s
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|g| g.name().to_string()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|g| g.name().to_string()))
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some((sign, m)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(m, if sign == Sign::Minus { -c } else { c });
                }
            }
        }
        out
    }
}

/// Multiply polynomials; see [`Polynomial`] multiplication.
pub fn multiply(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

/// A free commutative differential graded algebra `(ΛW, d)` on finitely
/// many named generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cdga {
    generators: Vec<Generator>,
    differential: BTreeMap<Generator, Polynomial>,
}

impl Cdga {
    /// Build a presentation. Generator names must be unique and every
    /// differential may only mention generators of the presentation.
    pub fn new(
        generators: impl IntoIterator<Item = Generator>,
        differential: impl IntoIterator<Item = (Generator, Polynomial)>,
    ) -> Result<Cdga> {
        let mut gens: Vec<Generator> = generators.into_iter().collect();
        gens.sort();
        for w in gens.windows(2) {
            if w[0].name() == w[1].name() {
                return Err(Error::DuplicateGenerator(w[0].name().to_string()));
            }
        }
        let known: BTreeSet<&Generator> = gens.iter().collect();
        let mut diff = BTreeMap::new();
        for (g, p) in differential {
            if !known.contains(&g) {
                return Err(Error::PresentationMismatch(g.name().to_string()));
            }
            if let Some(h) = p.generators().iter().find(|h| !known.contains(h)) {
                return Err(Error::PresentationMismatch(h.name().to_string()));
            }
            if !p.is_zero() {
                diff.insert(g, p);
            }
        }
        Ok(Cdga {
            generators: gens,
            differential: diff,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, name: &str) -> Result<Generator> {
        self.generators
            .binary_search_by(|g| g.name().cmp(name))
            .map(|i| self.generators[i].clone())
            .map_err(|_| Error::PresentationMismatch(name.to_string()))
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.generators.binary_search(g).is_ok()
    }

    /// The generator `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.generator(name)?))
    }

    /// `d` on a generator (zero for cycles).
    pub fn d(&self, g: &Generator) -> Polynomial {
        self.differential.get(g).cloned().unwrap_or_default()
    }

    pub fn differentials(&self) -> impl Iterator<Item = (&Generator, &Polynomial)> {
        self.differential.iter()
    }

    /// Canonical form of a word given by generator names.
    pub fn normalize(&self, names: &[&str]) -> Result<Option<(Sign, Monomial)>> {
        let word = names
            .iter()
            .map(|n| self.generator(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(normalize_monomial(&word))
    }

    /// Extend `d` to `p` by the graded Leibniz rule.
    pub fn apply_differential(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let dm = self.d_monomial(m);
            out.add_scaled(&dm, c);
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Polynomial {
        let word = m.expand();
        let mut out = Polynomial::zero();
        let mut prefix_degree = 0i64;
        for i in 0..word.len() {
            if let Some(dg) = self.differential.get(&word[i]) {
                let left = Polynomial::from_word(&word[..i], Scalar::sign_power(prefix_degree));
                let right = Polynomial::from_word(&word[i + 1..], Scalar::one());
                out += &(&(&left * dg) * &right);
            }
            prefix_degree += word[i].degree() as i64;
        }
        out
    }

    /// Check that `d` has degree +1 and squares to zero on every generator.
    pub fn check_d_squared(&self) -> DSquaredReport {
        let mut failures = Vec::new();
        for g in &self.generators {
            let dg = self.d(g);
            let wrong: Vec<i32> = dg
                .term_degrees()
                .into_iter()
                .filter(|d| *d != g.degree() + 1)
                .collect();
            if !wrong.is_empty() {
                failures.push(DFailure::DegreeMismatch {
                    generator: g.name().to_string(),
                    expected: g.degree() + 1,
                    found: wrong,
                });
                continue;
            }
            let ddg = self.apply_differential(&dg);
            if !ddg.is_zero() {
                failures.push(DFailure::NonZeroSquare {
                    generator: g.name().to_string(),
                    residue: ddg,
                });
            }
        }
        DSquaredReport { failures }
    }

    /// True when every differential is decomposable.
    pub fn is_minimal(&self) -> bool {
        self.differential.values().all(|p| p.is_decomposable())
    }

    /// Same generators with `f` applied to every differential.
    pub fn map_differentials(&self, f: &dyn Fn(&Polynomial) -> Polynomial) -> Result<Cdga> {
        Cdga::new(
            self.generators.iter().cloned(),
            self.differential.iter().map(|(g, p)| (g.clone(), f(p))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DFailure {
    DegreeMismatch {
        generator: String,
        expected: i32,
        found: Vec<i32>,
    },
    NonZeroSquare {
        generator: String,
        residue: Polynomial,
    },
}

impl DFailure {
    pub fn generator(&self) -> &str {
        match self {
            DFailure::DegreeMismatch { generator, .. } | DFailure::NonZeroSquare { generator, .. } => {
                generator
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DSquaredReport {
    pub failures: Vec<DFailure>,
}

impl DSquaredReport {
    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The minimal model of the `n`-sphere: `(Λx, 0)` with `|x| = n` for odd `n`,
/// and `(Λ(x, y), d)` with `|y| = 2n - 1`, `dy = x²` for even `n`.
pub fn sphere_model(n: i32) -> Result<Cdga> {
    if n <= 0 {
        return Err(Error::Precondition(format!("sphere dimension must be positive, got {n}")));
    }
    let x = Generator::new("x", n);
    if n % 2 == 1 {
        return Cdga::new([x], []);
    }
    let y = Generator::new("y", 2 * n - 1);
    let xx = Polynomial::from_word(&[x.clone(), x.clone()], Scalar::one());
    Cdga::new([x, y.clone()], [(y, xx)])
}
