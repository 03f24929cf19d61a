//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact. Runs without the libtest harness so the lines are always shown.

use std::collections::BTreeSet;
use std::process::Command;

use rhmap_core::algebra::{BasisElement, FiniteGradedAlgebra};
use rhmap_core::cochains::cohomology_dims;
use rhmap_core::coalgebra::dualize;
use rhmap_core::components::{component_model, degree_zero_system, enumerate_augmentation_families, Augmentation};
use rhmap_core::config_space::build_cohomology;
use rhmap_core::descriptor::{em, sphere, Factor, HomotopyTypeDescriptor as D, Multiplicity, Summand};
use rhmap_core::gca::sphere_model;
use rhmap_core::mapping::{build_mapping_model, sphere_mapping_model, MappingModel};
use rhmap_core::recognizer::{full_type, normal_form};
use rhmap_core::thom::thom_decomposition;
use rhmap_core::{selftest, Polynomial, Scalar};

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);
/// Dual basis element and its coproduct terms `(coefficient, left, right)`.
type Coproduct = (&'static str, Vec<(i64, &'static str, &'static str)>);
/// Value of m and the generator names in each degree.
type DegreeTable = (usize, Vec<(i32, Vec<&'static str>)>);

/// Unsigned Stirling numbers of the first kind from the recurrence
/// `c(n+1, j) = n c(n, j) + c(n, j-1)`.
fn stirling_oracle(n: usize, j: usize) -> u128 {
    let mut row = vec![1u128];
    for i in 0..n {
        let mut next = vec![0u128; row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j] += *c * i as u128;
            next[j + 1] += *c;
        }
        row = next;
    }
    row.get(j).copied().unwrap_or(0)
}

fn rhmap(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rhmap"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_type(m: usize, n: i32, pointed: bool) -> Result<D, String> {
    let (m_s, n_s) = (m.to_string(), n.to_string());
    let mut args = vec!["type", "--m", &m_s, "--k", "3", "--n", &n_s, "--format", "json"];
    if pointed {
        args.push("--pointed");
    }
    let (code, out, err) = rhmap(&args);
    if code != 0 {
        return Err(format!("exit {code}: {}", err.trim()));
    }
    D::from_json(&out).map_err(|e| e.to_string())
}

fn one(f: Vec<(Factor, u32)>) -> Summand {
    Summand::new(Multiplicity::Finite(1), f)
}

fn many(f: Vec<(Factor, u32)>) -> Summand {
    Summand::new(Multiplicity::CountablyMany, f)
}

fn k(d: i32) -> Factor {
    em(d as u32)
}

/// Published decompositions for three points, free and pointed.
fn stated_three_points(m: usize, n: i32) -> (D, D) {
    let mi = m as i32;
    let s = sphere(n as u32);
    if n % 2 == 1 {
        let (a, b) = (n - (mi - 1), n - 2 * (mi - 1));
        return if n > 2 * (mi - 1) {
            (D::single([(s, 1), (k(a), 3), (k(b), 2)]), D::single([(k(a), 3), (k(b), 2)]))
        } else if mi - 1 < n {
            (D::single([(s, 1), (k(a), 3)]), D::single([(k(a), 3)]))
        } else if n == mi - 1 {
            (D::countably_many([(s, 1)]), D::countably_many([]))
        } else {
            (D::single([(s, 1)]), D::single([]))
        };
    }
    if n == 2 {
        return match m {
            m if m > 4 => (D::single([(s, 1)]), D::single([])),
            4 => (D::countably_many([(s, 1)]), D::countably_many([])),
            3 => (
                D::new([one(vec![(sphere(1), 3), (s, 1)]), many(vec![(sphere(1), 2), (sphere(3), 1)])]),
                D::countably_many([(sphere(1), 3)]),
            ),
            _ => (
                D::new([
                    one(vec![(Factor::SpaceX, 1)]),
                    many(vec![(sphere(1), 1), (Factor::Heisenberg, 1), (k(2), 3), (sphere(3), 1)]),
                ]),
                D::countably_many([(Factor::NilmanifoldY, 1), (k(2), 3)]),
            ),
        };
    }
    if mi > 2 * n {
        (D::single([(s, 1)]), D::single([]))
    } else if mi == 2 * n {
        (D::countably_many([(s, 1)]), D::countably_many([]))
    } else {
        (D::single([(k(2 * n - mi), 1), (s, 1)]), D::single([(k(2 * n - mi), 1)]))
    }
}

fn criterion_1() -> Outcome {
    let mut grid: Vec<(usize, i32)> = vec![(2, 5), (3, 5), (3, 3), (4, 3), (6, 5), (5, 3)];
    grid.extend([(2, 2), (3, 2), (4, 2), (5, 2)]);
    grid.extend([(9, 4), (8, 4), (6, 4), (7, 4)]);
    let mut failures = Vec::new();
    for (m, n) in &grid {
        let (free, pointed) = stated_three_points(*m, *n);
        for (is_pointed, expected) in [(false, free), (true, pointed)] {
            match cli_type(*m, *n, is_pointed) {
                Ok(got) if got.equivalent(&expected) => {}
                Ok(got) => failures.push(format!(
                    "(m,n)=({m},{n}){}: got {got}, stated {expected}",
                    if is_pointed { " pointed" } else { "" }
                )),
                Err(e) => failures.push(format!("(m,n)=({m},{n}): {e}")),
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{} cases", grid.len() * 2))
    } else {
        Err(failures)
    }
}

/// Published odd-sphere products, with exponents from the oracle.
fn stated_odd(m: usize, kk: usize, n: i32, pointed: bool) -> D {
    let step = m as i32 - 1;
    let start = if pointed { 1 } else { 0 };
    let product = |last: i32| -> Vec<(Factor, u32)> {
        (start..=last)
            .map(|j| {
                let e = stirling_oracle(kk, kk - j as usize) as u32;
                let f = if j == 0 { sphere(n as u32) } else { k(n - j * step) };
                (f, e)
            })
            .collect()
    };
    let top = kk as i32 - 1;
    if n > top * step {
        return D::single(product(top));
    }
    if n < step {
        return if pointed { D::single([]) } else { D::single([(sphere(n as u32), 1)]) };
    }
    let l = n / step;
    if n == l * step {
        D::countably_many(product(l - 1))
    } else {
        D::single(product(l))
    }
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for (m, kk, n) in [(3, 4, 7), (2, 4, 3), (3, 4, 5), (2, 5, 3)] {
        for pointed in [false, true] {
            let stated = stated_odd(m, kk, n, pointed);
            let closed = thom_decomposition(m, kk, n, pointed);
            let full = full_type(m, kk, n, pointed, 6);
            match (closed, full) {
                (Ok(c), Ok(f)) => {
                    if !c.equivalent(&f) {
                        failures.push(format!("({m},{kk},{n},{pointed}): closed {c} vs pipeline {f}"));
                    }
                    if !c.equivalent(&stated) {
                        failures.push(format!("({m},{kk},{n},{pointed}): exponents {c} vs {stated}"));
                    }
                }
                (c, f) => failures.push(format!("({m},{kk},{n},{pointed}): {c:?} / {f:?}")),
            }
        }
    }
    if failures.is_empty() {
        Ok("8 cases".into())
    } else {
        Err(failures)
    }
}

fn stated_corollary(m: usize, kk: usize, pointed: bool) -> D {
    let start = if pointed { 1 } else { 0 };
    let e = |j: usize| stirling_oracle(kk, kk - j) as u32;
    if m >= 3 {
        D::single((start..=kk - 2).map(|j| (k(((kk - (j + 1)) * (m - 1)) as i32 - 1), e(j))))
    } else {
        D::countably_many((start..kk.saturating_sub(2)).map(|j| (k(kk as i32 - (2 + j as i32)), e(j))))
    }
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    if (stirling_oracle(4, 3), stirling_oracle(4, 2)) != (6, 11) {
        failures.push("oracle exponents for k=4 are not 6, 11".into());
    }
    for (m, kk) in [(3usize, 4usize), (2, 5), (2, 3)] {
        let (code, out, err) =
            rhmap(&["corollary", "--m", &m.to_string(), "--k", &kk.to_string(), "--format", "json"]);
        if code != 0 {
            failures.push(format!("({m},{kk}): exit {code}: {}", err.trim()));
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&out).expect("json output");
        for (key, pointed) in [("free", false), ("pointed", true)] {
            let got = D::from_json(&v[key].to_string()).expect("descriptor");
            let stated = stated_corollary(m, kk, pointed);
            if !got.equivalent(&stated) {
                failures.push(format!("({m},{kk}) {key}: got {got}, stated {stated}"));
            }
        }
    }
    if failures.is_empty() {
        Ok("3 cases, free and pointed".into())
    } else {
        Err(failures)
    }
}

fn poly(mm: &MappingModel, terms: &[(i64, &[&str])]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (c, names) in terms {
        let word: Vec<_> = names.iter().map(|n| mm.resolve(n).expect("known generator")).collect();
        p = &p + &Polynomial::from_word(&word, Scalar::from_int(*c));
    }
    p
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in [2usize, 3] {
        let o: i64 = if m % 2 == 0 { -1 } else { 1 }; // (-1)^{m+1}
        let e = -o; // (-1)^m

        // coproducts on the dual basis
        let b = build_cohomology(m, 3).expect("cohomology");
        let co = dualize(b.algebra(), false);
        let expected: [Coproduct; 6] = [
            ("1", vec![(1, "1", "1")]),
            ("a12", vec![(1, "1", "a12"), (1, "a12", "1")]),
            ("a13", vec![(1, "1", "a13"), (1, "a13", "1")]),
            ("a23", vec![(1, "1", "a23"), (1, "a23", "1")]),
            (
                "a12.23",
                vec![
                    (1, "1", "a12.23"),
                    (1, "a12.23", "1"),
                    (o, "a12", "a23"),
                    (1, "a23", "a12"),
                    (o, "a12", "a13"),
                    (1, "a13", "a12"),
                ],
            ),
            (
                "a13.23",
                vec![
                    (1, "1", "a13.23"),
                    (1, "a13.23", "1"),
                    (o, "a13", "a23"),
                    (1, "a23", "a13"),
                    (e, "a12", "a13"),
                    (-1, "a13", "a12"),
                ],
            ),
        ];
        for (label, terms) in expected {
            checked += 1;
            let i = co.index_of(label).expect("dual label");
            let got: BTreeSet<(String, String, Scalar)> = co
                .coproduct(i)
                .iter()
                .map(|(l, r, c)| (co.label(*l).to_string(), co.label(*r).to_string(), c.clone()))
                .collect();
            let want: BTreeSet<(String, String, Scalar)> =
                terms.iter().map(|(c, l, r)| (l.to_string(), r.to_string(), Scalar::from_int(*c))).collect();
            if got != want {
                failures.push(format!("m={m} coproduct of {label}"));
            }
        }

        // differentials on y (x) beta, in full names
        let mm = sphere_mapping_model(m, 3, 2, false, 6).expect("model");
        let d = |name: &str| mm.cdga().d(&mm.resolve(name).expect("generator"));
        let x = "x_1";
        let full: [(&str, Polynomial); 6] = [
            ("y_1", poly(&mm, &[(1, &[x, x])])),
            ("y_a12", poly(&mm, &[(2, &[x, "x_a12"])])),
            ("y_a13", poly(&mm, &[(2, &[x, "x_a13"])])),
            ("y_a23", poly(&mm, &[(2, &[x, "x_a23"])])),
            (
                "y_a12.23",
                poly(&mm, &[(2, &[x, "x_a12.23"]), (2 * o, &["x_a12", "x_a23"]), (2 * o, &["x_a13", "x_a23"])]),
            ),
            (
                "y_a13.23",
                poly(&mm, &[(2, &[x, "x_a13.23"]), (2 * o, &["x_a13", "x_a23"]), (2 * e, &["x_a12", "x_a13"])]),
            ),
        ];
        for (name, want) in full {
            checked += 1;
            if d(name) != want {
                failures.push(format!("m={m} d~({name}) = {} vs displayed {}", d(name), want));
            }
        }

        // short-name differentials, free and pointed
        let short: [(&str, Polynomial); 5] = [
            ("y", poly(&mm, &[(1, &["x", "x"])])),
            ("q1", poly(&mm, &[(2, &["x", "p1"])])),
            ("q2", poly(&mm, &[(2, &["x", "p2"])])),
            ("s1", poly(&mm, &[(2, &["x", "r1"]), (2 * o, &["p1", "p3"]), (2 * o, &["p2", "p3"])])),
            ("s2", poly(&mm, &[(2, &["x", "r2"]), (2 * o, &["p1", "p2"]), (2 * e, &["p2", "p3"])])),
        ];
        for (name, want) in short {
            checked += 1;
            if d(name) != want {
                failures.push(format!("m={m} d({name}) = {} vs displayed {}", mm.show(&d(name)), mm.show(&want)));
            }
        }
        let pm = sphere_mapping_model(m, 3, 2, true, 6).expect("pointed model");
        let dp = |name: &str| pm.cdga().d(&pm.resolve(name).expect("generator"));
        let pointed: [(&str, Polynomial); 2] = [
            ("s1", poly(&pm, &[(2 * o, &["p1", "p3"]), (2 * o, &["p2", "p3"])])),
            ("s2", poly(&pm, &[(2 * o, &["p1", "p2"]), (-2 * o, &["p2", "p3"])])),
        ];
        for (name, want) in pointed {
            checked += 1;
            if dp(name) != want {
                failures.push(format!(
                    "m={m} pointed d({name}) = {} vs displayed {}",
                    pm.show(&dp(name)),
                    pm.show(&want)
                ));
            }
        }
        let others_closed = pm
            .cdga()
            .generators()
            .iter()
            .filter(|g| !["s1", "s2"].contains(&pm.display_name(g).as_str()))
            .all(|g| pm.cdga().d(g).is_zero());
        if !others_closed {
            failures.push(format!("m={m} pointed: some generator besides s1, s2 is not a cycle"));
        }
    }

    // degree tables for n = 2
    let tables: [DegreeTable; 4] = [
        (
            5,
            vec![(3, vec!["y"]), (2, vec!["x"]), (-1, vec!["q1", "q2", "q3"]), (-2, vec!["p1", "p2", "p3"]),
                 (-5, vec!["s1", "s2"]), (-6, vec!["r1", "r2"])],
        ),
        (
            4,
            vec![(3, vec!["y"]), (2, vec!["x"]), (0, vec!["q1", "q2", "q3"]), (-1, vec!["p1", "p2", "p3"]),
                 (-3, vec!["s1", "s2"]), (-4, vec!["r1", "r2"])],
        ),
        (
            3,
            vec![(3, vec!["y"]), (2, vec!["x"]), (1, vec!["q1", "q2", "q3"]), (0, vec!["p1", "p2", "p3"]),
                 (-1, vec!["s1", "s2"]), (-2, vec!["r1", "r2"])],
        ),
        (
            2,
            vec![(3, vec!["y"]), (2, vec!["q1", "q2", "q3", "x"]), (1, vec!["p1", "p2", "p3", "s1", "s2"]),
                 (0, vec!["r1", "r2"])],
        ),
    ];
    for (m, want) in tables {
        checked += 1;
        let got = sphere_mapping_model(m, 3, 2, false, 6).expect("model").degree_table();
        let want: Vec<(i32, Vec<String>)> =
            want.into_iter().map(|(d, v)| (d, v.into_iter().map(String::from).collect())).collect();
        if got != want {
            failures.push(format!("m={m} degree table {got:?}"));
        }
    }

    if failures.is_empty() {
        Ok(format!("{checked} formulas"))
    } else {
        Err(failures)
    }
}

/// Number of families, their common dimension, and the normalized
/// directions of the one-dimensional ones.
fn lines(m: usize, n: i32) -> Result<(usize, usize, BTreeSet<Vec<Scalar>>), String> {
    let mm = sphere_mapping_model(m, 3, n, false, 6).map_err(|e| e.to_string())?;
    let system = degree_zero_system(&mm);
    let fams = enumerate_augmentation_families(&system).map_err(|e| e.to_string())?;
    let dims: BTreeSet<usize> = fams.iter().map(|f| f.dimension()).collect();
    if dims.len() != 1 {
        return Err(format!("family dimensions {dims:?}"));
    }
    let mut directions = BTreeSet::new();
    for f in fams.iter().filter(|f| f.dimension() == 1) {
        let u = f.point(&[Scalar::one()]);
        let v: Vec<Scalar> = system.unknowns.iter().map(|g| u.value(g.name())).collect();
        let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Scalar::one);
        directions.insert(v.iter().map(|c| c / &lead).collect());
    }
    Ok((fams.len(), dims.into_iter().next().unwrap_or(0), directions))
}

fn criterion_5() -> Outcome {
    let s = |v: [i64; 3]| v.iter().map(|c| Scalar::from_int(*c)).collect::<Vec<_>>();
    let mut failures = Vec::new();
    let four: BTreeSet<Vec<Scalar>> = [s([1, 0, 0]), s([0, 1, 0]), s([0, 0, 1]), s([1, -1, 1])].into_iter().collect();
    match lines(3, 2) {
        Ok((4, 1, dirs)) if dirs == four => {}
        other => failures.push(format!("(3,2): {other:?}")),
    }
    match lines(4, 2) {
        Ok((1, 3, _)) => {}
        other => failures.push(format!("(4,2): {other:?}")),
    }
    match lines(2, 2) {
        Ok((1, 2, _)) => {}
        other => failures.push(format!("(2,2): {other:?}")),
    }
    if failures.is_empty() {
        Ok("(3,2) four lines, (4,2) one 3-dim family, (2,2) one 2-dim family".into())
    } else {
        Err(failures)
    }
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for m in 2..=5 {
        for kk in 2..=4 {
            for n in 1..=6 {
                for pointed in [false, true] {
                    let mm = sphere_mapping_model(m, kk, n, pointed, 6).expect("model");
                    if !mm.cdga().check_d_squared().is_pass() {
                        failures.push(format!("d^2 at ({m},{kk},{n},{pointed})"));
                    }
                }
            }
        }
    }
    for m in 2..=5 {
        for kk in 2..=5 {
            let b = build_cohomology(m, kk).expect("cohomology");
            let dims = b.algebra().dims_by_degree();
            for j in 0..kk {
                let got = dims.get(&((j * (m - 1)) as i32)).copied().unwrap_or(0) as u128;
                if got != stirling_oracle(kk, kk - j) {
                    failures.push(format!("dim H^{} of F(R^{m},{kk}) = {got}", j * (m - 1)));
                }
            }
            for pointed in [false, true] {
                let c = dualize(b.algebra(), pointed);
                if !c.coassociativity_failures().is_empty() || !c.counit_failures().is_empty() {
                    failures.push(format!("coalgebra laws at ({m},{kk},{pointed})"));
                }
                for i in 0..c.dim() {
                    for (l, r, coeff) in c.coproduct(i) {
                        let mu = b.algebra().structure_constant(c.primal_index(*l), c.primal_index(*r), c.primal_index(i));
                        let sign = Scalar::sign_power(c.degree(*l) as i64 * c.degree(*r) as i64);
                        if *coeff != &mu * &sign {
                            failures.push(format!("transpose at ({m},{kk}) element {}", c.label(i)));
                        }
                    }
                }
            }
        }
    }
    for m in 2..=5 {
        let source = FiniteGradedAlgebra::new(
            vec![
                BasisElement { label: "1".into(), dual_label: "1".into(), degree: 0 },
                BasisElement { label: "a12".into(), dual_label: "a12".into(), degree: m as i32 - 1 },
            ],
            0,
            [],
        )
        .expect("sphere cohomology");
        for n in 1..=6 {
            for pointed in [false, true] {
                let direct = build_mapping_model(&sphere_model(n).expect("sphere"), &source, pointed).expect("model");
                let via = sphere_mapping_model(m, 2, n, pointed, 6).expect("model");
                if direct.cdga() != via.cdga() {
                    failures.push(format!("k=2 vs sphere source at m={m} n={n} pointed={pointed}"));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok("d^2 grid, Stirling dimensions, coalgebra identities, k=2 special case".into())
    } else {
        Err(failures)
    }
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let report = selftest::run(2024).expect("selftest");
    let robust = report.checks.iter().find(|c| c.name == "recognizer-robustness").expect("check present");
    if !robust.passed {
        failures.push(robust.detail.clone());
    }
    let goldens: [(usize, i32, &[&str]); 8] = [
        (2, 2, &["", "r1=1", "r2=-1", "r1=2,r2=3"]),
        (3, 2, &["", "p1=2", "p2=1", "p3=-1", "p1=1,p2=-1,p3=1"]),
        (4, 2, &["", "q1=1,q2=2,q3=3"]),
        (5, 2, &[""]),
        (6, 4, &[""]),
        (7, 4, &[""]),
        (3, 5, &[""]),
        (4, 3, &["", "q1=1"]),
    ];
    let mut cases = 0;
    for (m, n, augs) in goldens {
        for pointed in [false, true] {
            let mm = sphere_mapping_model(m, 3, n, pointed, 6).expect("model");
            for aug in augs {
                let Ok(u) = Augmentation::parse(&mm, aug) else { continue };
                let Ok(c) = component_model(&mm, &u) else { continue };
                cases += 1;
                let before = cohomology_dims(&c.cdga, 4);
                let after = normal_form(&c.cdga).and_then(|nf| cohomology_dims(&nf, 4));
                if before.is_err() || before != after {
                    failures.push(format!("({m},{n},{pointed}) {aug:?}: {before:?} vs {after:?}"));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{} scrambled references, cohomology kept on {cases} components", robust.detail))
    } else {
        Err(failures)
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("three-point decompositions", criterion_1),
        ("odd-sphere closed form vs pipeline", criterion_2),
        ("corollary formulas", criterion_3),
        ("k=3 coproducts, differentials, degree tables", criterion_4),
        ("augmentation systems", criterion_5),
        ("property suites", criterion_6),
        ("recognizer robustness", criterion_7),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(failures) => {
                all = false;
                println!("criterion {}: FAIL {name}: {}", i + 1, failures.join(" | "));
            }
        }
    }
    if !all {
        std::process::exit(1);
    }
}
