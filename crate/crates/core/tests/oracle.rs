mod common;

use common::OracleDiagram;
use proptest::prelude::*;
use twistvol::corpus::{bundled_dir, load_dir};
use twistvol::diagram::{parse_pd, PlanarDiagram};
use twistvol::synth;
use twistvol::twist::{is_prime, is_twist_reduced, twist_regions};

fn region_sizes(d: &PlanarDiagram) -> Vec<usize> {
    let mut v: Vec<usize> = twist_regions(d).iter().map(|r| r.crossing_count).collect();
    v.sort_unstable();
    v
}

fn assert_matches_oracle(d: &PlanarDiagram) {
    let o = OracleDiagram::new(&d.pd_tuples());
    let name = d.name().unwrap_or("?");
    assert_eq!(region_sizes(d), o.region_sizes(), "{name}: regions");
    assert_eq!(is_prime(d).unwrap().prime, o.is_prime(), "{name}: prime");
    assert_eq!(
        is_twist_reduced(d).unwrap().twist_reduced,
        o.is_twist_reduced(),
        "{name}: twist reduced"
    );
}

fn trefoil() -> PlanarDiagram {
    parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
        .unwrap()
        .with_name("trefoil")
}

#[test]
fn bundled_corpus_matches_oracle() {
    let mut checked = 0;
    for (_, e) in load_dir(&bundled_dir()).unwrap() {
        let d = e.diagram().unwrap();
        if d.crossing_count() == 0 || d.crossing_count() > 8 {
            continue;
        }
        assert_matches_oracle(&d);
        let o = OracleDiagram::new(&d.pd_tuples());
        assert_eq!(o.region_sizes(), e.expected.region_crossings, "{}", e.name);
        assert_eq!(o.is_prime(), e.expected.prime, "{}", e.name);
        if let Some(tr) = e.expected.twist_reduced {
            assert_eq!(o.is_twist_reduced(), tr, "{}", e.name);
        }
        checked += 1;
    }
    assert!(checked >= 12, "only {checked} corpus diagrams checked");
}

#[test]
fn generated_families_match_oracle() {
    let mut diagrams = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=3 {
                if a + b + c <= 9 {
                    diagrams.push(synth::pretzel(&[a, b, c]).unwrap());
                }
            }
            if a + b <= 8 {
                diagrams.push(synth::rational(&[a, b]).unwrap());
                diagrams.push(synth::rational(&[a, 1, b]).unwrap());
            }
        }
    }
    for b in 1..=3 {
        for c in 1..=3 {
            diagrams.push(synth::flype_example(b, c).unwrap());
        }
    }
    let t = trefoil();
    for label in 1..=6 {
        diagrams.push(synth::add_kink(&t, label).unwrap());
        diagrams.push(synth::connected_sum(&t, 1, &t, label).unwrap());
    }
    diagrams.push(synth::connected_sum(&t, 2, &synth::double_twist(2, 2).unwrap(), 3).unwrap());
    for d in &diagrams {
        assert_matches_oracle(d);
        assert_matches_oracle(&d.mirror().unwrap());
        assert_matches_oracle(&d.reflect().unwrap());
    }
}

fn small_diagram() -> impl Strategy<Value = PlanarDiagram> {
    prop_oneof![
        prop::collection::vec(1usize..4, 2..4)
            .prop_filter("small", |v| v.iter().sum::<usize>() <= 10)
            .prop_map(|v| synth::pretzel(&v).unwrap()),
        prop::collection::vec(1usize..4, 1..4)
            .prop_filter("small", |v| v.iter().sum::<usize>() <= 10)
            .prop_map(|v| synth::rational(&v).unwrap()),
        (1usize..4, 1usize..4).prop_map(|(b, c)| synth::flype_example(b, c).unwrap()),
        (1u32..7, 1u32..7)
            .prop_map(|(a, b)| { synth::connected_sum(&trefoil(), a, &trefoil(), b).unwrap() }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_preserves_everything(d in small_diagram(), shift in 1u32..1000, scale in 1u32..5) {
        let r = d.relabel(|l| l * scale + shift).unwrap();
        prop_assert_eq!(region_sizes(&r), region_sizes(&d));
        prop_assert_eq!(is_prime(&r).unwrap().prime, is_prime(&d).unwrap().prime);
        prop_assert_eq!(
            is_twist_reduced(&r).unwrap().twist_reduced,
            is_twist_reduced(&d).unwrap().twist_reduced
        );
        prop_assert_eq!(r.faces().len(), d.faces().len());
    }

    #[test]
    fn mirror_and_reflection_preserve_twist_data(d in small_diagram()) {
        for e in [d.mirror().unwrap(), d.reflect().unwrap()] {
            prop_assert_eq!(region_sizes(&e), region_sizes(&d));
            prop_assert_eq!(is_prime(&e).unwrap().prime, is_prime(&d).unwrap().prime);
            prop_assert_eq!(
                is_twist_reduced(&e).unwrap().twist_reduced,
                is_twist_reduced(&d).unwrap().twist_reduced
            );
        }
        let m = d.mirror().unwrap();
        for (a, b) in d.crossings().iter().zip(m.crossings()) {
            prop_assert_eq!(a.sign, -b.sign);
        }
    }

    #[test]
    fn regions_partition_crossings(d in small_diagram()) {
        let regions = twist_regions(&d);
        let mut seen = vec![0usize; d.crossing_count()];
        for r in &regions {
            prop_assert_eq!(r.crossings.len(), r.crossing_count);
            for &x in &r.crossings {
                seen[x] += 1;
            }
            if !r.cyclic {
                prop_assert_eq!(r.bigons.len(), r.crossing_count - 1);
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
    }

    #[test]
    fn random_diagrams_match_oracle(d in small_diagram()) {
        let o = OracleDiagram::new(&d.pd_tuples());
        prop_assert_eq!(region_sizes(&d), o.region_sizes());
        prop_assert_eq!(is_prime(&d).unwrap().prime, o.is_prime());
        prop_assert_eq!(is_twist_reduced(&d).unwrap().twist_reduced, o.is_twist_reduced());
    }

    #[test]
    fn display_round_trips(d in small_diagram()) {
        let again = parse_pd(&d.to_string()).unwrap();
        prop_assert_eq!(again, d);
    }
}
