//! Seeded randomized checks of the algebraic invariants, for use from the
//! command line.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::dualize;
use crate::config_space::{build_cohomology, stirling};
use crate::descriptor::{em, sphere, Factor};
use crate::error::Result;
use crate::gca::{sphere_model, Cdga, Generator, Polynomial};
use crate::mapping::sphere_mapping_model;
use crate::recognizer::{change_basis, classify_factor};
use crate::scalar::Scalar;
use crate::serial::{cdga_from_json, cdga_to_json};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &'static str, failures: Vec<String>, trials: usize) -> Check {
    Check {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{trials} trials")
        } else {
            failures.join("; ")
        },
    }
}

/// Run every suite with the given seed.
pub fn run(seed: u64) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        d_squared(&mut rng)?,
        graded_commutativity(&mut rng),
        leibniz(&mut rng)?,
        normalization(&mut rng),
        json_round_trip(&mut rng)?,
        coalgebra_laws(&mut rng)?,
        stirling_dimensions()?,
        recognizer_robustness(&mut rng, 50)?,
    ];
    Ok(SelftestReport { seed, checks })
}

fn random_grid_point(rng: &mut ChaCha8Rng) -> (usize, usize, i32, bool) {
    (rng.gen_range(2..=5), rng.gen_range(2..=4), rng.gen_range(1..=6), rng.gen())
}

fn d_squared(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut failures = Vec::new();
    let trials = 8;
    for _ in 0..trials {
        let (m, k, n, pointed) = random_grid_point(rng);
        let mm = sphere_mapping_model(m, k, n, pointed, 6)?;
        if !mm.cdga().check_d_squared().is_pass() {
            failures.push(format!("m={m} k={k} n={n} pointed={pointed}"));
        }
    }
    Ok(check("d-squared", failures, trials))
}

fn random_generators(rng: &mut ChaCha8Rng, count: usize) -> Vec<Generator> {
    (0..count).map(|i| Generator::new(format!("g{i}"), rng.gen_range(-3..=4))).collect()
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[Generator], max_len: usize) -> Vec<Generator> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| gens.choose(rng).expect("nonempty").clone()).collect()
}

fn degree(word: &[Generator]) -> i64 {
    word.iter().map(|g| g.degree() as i64).sum()
}

fn graded_commutativity(rng: &mut ChaCha8Rng) -> Check {
    let gens = random_generators(rng, 6);
    let trials = 200;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let a = random_word(rng, &gens, 3);
        let b = random_word(rng, &gens, 3);
        let pa = Polynomial::from_word(&a, Scalar::one());
        let pb = Polynomial::from_word(&b, Scalar::one());
        let sign = Scalar::sign_power(degree(&a) * degree(&b));
        if &pa * &pb != (&pb * &pa).scale(&sign) {
            failures.push(format!("{a:?} * {b:?}"));
        }
    }
    check("graded-commutativity", failures, trials)
}

fn leibniz(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut failures = Vec::new();
    let mut trials = 0;
    for _ in 0..4 {
        let (m, k, n, pointed) = random_grid_point(rng);
        let mm = sphere_mapping_model(m, k.min(3), n, pointed, 6)?;
        let a = mm.cdga();
        if a.is_empty() {
            continue;
        }
        for _ in 0..25 {
            trials += 1;
            let wp = random_word(rng, a.generators(), 2);
            let wq = random_word(rng, a.generators(), 2);
            let p = Polynomial::from_word(&wp, Scalar::from_int(rng.gen_range(1..5)));
            let q = Polynomial::from_word(&wq, Scalar::from_int(rng.gen_range(-4..0)));
            let lhs = a.apply_differential(&(&p * &q));
            let rhs = &(&a.apply_differential(&p) * &q)
                + &(&p * &a.apply_differential(&q)).scale(&Scalar::sign_power(degree(&wp)));
            if lhs != rhs {
                failures.push(format!("m={m} k={k} n={n}: {p} * {q}"));
            }
        }
    }
    Ok(check("leibniz", failures, trials))
}

/// Sign of the permutation sorting `word` into `sorted`, with Koszul signs.
fn koszul_sign(word: &[Generator]) -> i64 {
    let mut w = word.to_vec();
    let mut exponent = 0i64;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                exponent += w[j].degree() as i64 * w[j + 1].degree() as i64;
                w.swap(j, j + 1);
            }
        }
    }
    exponent
}

fn normalization(rng: &mut ChaCha8Rng) -> Check {
    let gens = random_generators(rng, 5);
    let trials = 200;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let word = random_word(rng, &gens, 5);
        let mut shuffled = word.clone();
        shuffled.shuffle(rng);
        let a = Polynomial::from_word(&word, Scalar::sign_power(koszul_sign(&word)));
        let b = Polynomial::from_word(&shuffled, Scalar::sign_power(koszul_sign(&shuffled)));
        if a != b {
            failures.push(format!("{word:?} vs {shuffled:?}"));
        }
    }
    check("normalize-order", failures, trials)
}

fn json_round_trip(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut failures = Vec::new();
    let trials = 6;
    for _ in 0..trials {
        let (m, k, n, pointed) = random_grid_point(rng);
        let a = sphere_mapping_model(m, k, n, pointed, 6)?.cdga().clone();
        if cdga_from_json(&cdga_to_json(&a))? != a {
            failures.push(format!("m={m} k={k} n={n} pointed={pointed}"));
        }
    }
    Ok(check("json-round-trip", failures, trials))
}

fn coalgebra_laws(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut failures = Vec::new();
    let trials = 4;
    for _ in 0..trials {
        let (m, k) = (rng.gen_range(2..=5), rng.gen_range(2..=4));
        let b = build_cohomology(m, k)?;
        for pointed in [false, true] {
            let c = dualize(b.algebra(), pointed);
            if !c.coassociativity_failures().is_empty() || !c.counit_failures().is_empty() {
                failures.push(format!("m={m} k={k} pointed={pointed}"));
            }
        }
    }
    Ok(check("coalgebra-laws", failures, trials))
}

fn stirling_dimensions() -> Result<Check> {
    let mut failures = Vec::new();
    let mut trials = 0;
    for k in 2..=5 {
        for m in [2, 3] {
            trials += 1;
            let b = build_cohomology(m, k)?;
            let dims = b.algebra().dims_by_degree();
            for j in 0..k {
                let expected = stirling(k, k - j)? as usize;
                let got = dims.get(&((j * (m - 1)) as i32)).copied().unwrap_or(0);
                if got != expected {
                    failures.push(format!("m={m} k={k} j={j}: {got} != {expected}"));
                }
            }
        }
    }
    Ok(check("stirling-dimensions", failures, trials))
}

/// A random invertible `r x r` matrix with small integer entries.
pub fn random_invertible(rng: &mut impl Rng, r: usize) -> Vec<Vec<Scalar>> {
    loop {
        let m: Vec<Vec<Scalar>> = (0..r)
            .map(|_| (0..r).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect())
            .collect();
        if crate::linalg::inverse(&m).is_some() {
            return m;
        }
    }
}

/// Rename generators at random, mix the degree-1 generators by a random
/// invertible matrix and rescale the others.
pub fn scramble(cdga: &Cdga, rng: &mut impl Rng) -> Result<Cdga> {
    let mut labels: Vec<usize> = (0..cdga.len()).collect();
    labels.shuffle(rng);
    let renamed: std::collections::BTreeMap<Generator, Generator> = cdga
        .generators()
        .iter()
        .zip(&labels)
        .map(|(g, l)| (g.clone(), Generator::new(format!("z{l}"), g.degree())))
        .collect();
    let rename = |g: &Generator| renamed[g].clone();
    let mut out = Cdga::new(
        renamed.values().cloned(),
        cdga.generators().iter().map(|g| (rename(g), cdga.d(g).rename(&rename))),
    )?;
    let degrees: std::collections::BTreeSet<i32> = out.generators().iter().map(|g| g.degree()).collect();
    for deg in degrees {
        let r = out.generators().iter().filter(|g| g.degree() == deg).count();
        let matrix = if deg == 1 {
            random_invertible(rng, r)
        } else {
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            if i == j {
                                let mut c = 0;
                                while c == 0 {
                                    c = rng.gen_range(-4..=4);
                                }
                                Scalar::from_int(c)
                            } else {
                                Scalar::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        };
        out = change_basis(&out, deg, &matrix)?;
    }
    Ok(out)
}

/// Reference models of the named spaces checked for robustness.
pub fn named_references() -> Result<Vec<(Factor, Cdga)>> {
    let g = |n: &str, d: i32| Generator::new(n, d);
    let word = |a: &Generator, b: &Generator| Polynomial::from_word(&[a.clone(), b.clone()], Scalar::one());
    let (a, b, c, x, y, t) = (g("a", 1), g("b", 1), g("c", 1), g("x", 1), g("y", 1), g("t", 1));
    let heisenberg = Cdga::new([x.clone(), y.clone(), t.clone()], [(t.clone(), word(&x, &y))])?;
    let nil = Cdga::new(
        [a.clone(), b.clone(), c.clone(), x.clone(), y.clone()],
        [(x.clone(), word(&a, &b)), (y.clone(), word(&b, &c))],
    )?;
    Ok(vec![
        (Factor::Heisenberg, heisenberg),
        (Factor::NilmanifoldY, nil),
        (sphere(2), sphere_model(2)?),
        (sphere(6), sphere_model(6)?),
        (em(3), Cdga::new([g("u", 3)], [])?),
        (em(2), Cdga::new([g("u", 2)], [])?),
    ])
}

fn recognizer_robustness(rng: &mut ChaCha8Rng, trials: usize) -> Result<Check> {
    let mut failures = Vec::new();
    let references = named_references()?;
    for (name, model) in &references {
        for _ in 0..trials {
            let scrambled = scramble(model, rng)?;
            let got = classify_factor(&scrambled)?;
            if got != *name {
                failures.push(format!("{name:?} classified as {got:?}"));
                break;
            }
        }
    }
    Ok(check("recognizer-robustness", failures, trials * references.len()))
}
