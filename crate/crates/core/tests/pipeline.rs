use rhmap_core::components::{components_distinct, degree_zero_system, enumerate_augmentation_families, Verdict};
use rhmap_core::config_space::DEFAULT_MAX_K;
use rhmap_core::descriptor::{em, sphere, Factor, HomotopyTypeDescriptor as D, Multiplicity, Summand};
use rhmap_core::mapping::sphere_mapping_model;
use rhmap_core::recognizer::full_type;
use rhmap_core::thom::{sphere_thom_numbers, thom_decomposition};

fn pipeline(m: usize, k: usize, n: i32, pointed: bool) -> D {
    full_type(m, k, n, pointed, DEFAULT_MAX_K).unwrap()
}

fn one(f: Vec<(Factor, u32)>) -> Summand {
    Summand::new(Multiplicity::Finite(1), f)
}

fn many(f: Vec<(Factor, u32)>) -> Summand {
    Summand::new(Multiplicity::CountablyMany, f)
}

#[test]
fn odd_targets_three_points() {
    // (m, n, free, pointed)
    let cases = [
        (2, 5, D::single([(sphere(5), 1), (em(4), 3), (em(3), 2)]), D::single([(em(4), 3), (em(3), 2)])),
        (3, 5, D::single([(sphere(5), 1), (em(3), 3), (em(1), 2)]), D::single([(em(3), 3), (em(1), 2)])),
        (3, 3, D::single([(sphere(3), 1), (em(1), 3)]), D::single([(em(1), 3)])),
        (4, 3, D::countably_many([(sphere(3), 1)]), D::countably_many([])),
        (6, 5, D::countably_many([(sphere(5), 1)]), D::countably_many([])),
        (5, 3, D::single([(sphere(3), 1)]), D::single([])),
    ];
    for (m, n, free, pointed) in cases {
        assert!(pipeline(m, 3, n, false).equivalent(&free), "free m={m} n={n}: {}", pipeline(m, 3, n, false));
        assert!(pipeline(m, 3, n, true).equivalent(&pointed), "pointed m={m} n={n}");
    }
}

#[test]
fn two_sphere_target_three_points() {
    let x = D::new([
        one(vec![(Factor::SpaceX, 1)]),
        many(vec![(sphere(1), 1), (Factor::Heisenberg, 1), (em(2), 3), (sphere(3), 1)]),
    ]);
    let cases = [
        (5, D::single([(sphere(2), 1)]), D::single([])),
        (4, D::countably_many([(sphere(2), 1)]), D::countably_many([])),
        (
            3,
            D::new([one(vec![(sphere(1), 3), (sphere(2), 1)]), many(vec![(sphere(1), 2), (sphere(3), 1)])]),
            D::countably_many([(sphere(1), 3)]),
        ),
        (2, x, D::countably_many([(Factor::NilmanifoldY, 1), (em(2), 3)])),
    ];
    for (m, free, pointed) in cases {
        assert!(pipeline(m, 3, 2, false).equivalent(&free), "free m={m}: {}", pipeline(m, 3, 2, false));
        assert!(pipeline(m, 3, 2, true).equivalent(&pointed), "pointed m={m}: {}", pipeline(m, 3, 2, true));
    }
}

#[test]
fn even_targets_three_points() {
    assert!(pipeline(9, 3, 4, false).equivalent(&D::single([(sphere(4), 1)])));
    assert!(pipeline(9, 3, 4, true).equivalent(&D::single([])));
    assert!(pipeline(8, 3, 4, false).equivalent(&D::countably_many([(sphere(4), 1)])));
    assert!(pipeline(8, 3, 4, true).equivalent(&D::countably_many([])));
    // three cycles of degree 2n - m survive in the middle range
    assert!(pipeline(6, 3, 4, false).equivalent(&D::single([(em(2), 3), (sphere(4), 1)])));
    assert!(pipeline(7, 3, 4, true).equivalent(&D::single([(em(1), 3)])));
}

#[test]
fn odd_targets_agree_with_closed_forms() {
    for (m, k, n) in [(3, 4, 7), (2, 4, 3), (3, 4, 5), (2, 5, 3), (2, 3, 1), (4, 4, 3)] {
        for pointed in [false, true] {
            let closed = thom_decomposition(m, k, n, pointed).unwrap();
            let full = pipeline(m, k, n, pointed);
            assert!(full.equivalent(&closed), "{m} {k} {n} {pointed}: {full} vs {closed}");
        }
    }
}

#[test]
fn parameters_count_degree_zero_generators() {
    for m in 2..=4 {
        for k in 2..=4 {
            for n in [1, 3, 5] {
                for pointed in [false, true] {
                    let mm = sphere_mapping_model(m, k, n, pointed, DEFAULT_MAX_K).unwrap();
                    let fams = enumerate_augmentation_families(&degree_zero_system(&mm)).unwrap();
                    assert_eq!(fams.len(), 1);
                    let n0 = sphere_thom_numbers(m, k, n, pointed).unwrap().get(&0).copied().unwrap_or(0);
                    assert_eq!(fams[0].dimension() as u128, n0, "m={m} k={k} n={n} pointed={pointed}");
                }
            }
        }
    }
}

#[test]
fn families_are_separated_by_cycles() {
    for (m, pointed) in [(3, false), (3, true), (2, false), (4, false)] {
        let mm = sphere_mapping_model(m, 3, 2, pointed, DEFAULT_MAX_K).unwrap();
        let fams = enumerate_augmentation_families(&degree_zero_system(&mm)).unwrap();
        let report = components_distinct(&mm, &fams);
        assert!(report.pairs.iter().all(|(_, _, v)| *v == Verdict::Distinct));
        assert!(report.within.iter().all(|v| *v == Verdict::Distinct), "m={m}");
    }
}

#[test]
fn four_points_even_target_runs() {
    let d = pipeline(3, 4, 2, true);
    assert!(!d.summands.is_empty());
    let json = d.to_json();
    assert_eq!(D::from_json(&json).unwrap(), d);
}
