mod common;

use std::collections::HashSet;
use std::fs;

use wheelfree::canon::canonical_form;
use wheelfree::enumerate::{enumerate_graphs, spool_enumeration, Budget, GeneratorConfig, Predicate};
use wheelfree::graph6::from_graph6;
use wheelfree::wheel::{brute_force_contains_wheel, is_wheel_free};

fn count(n: usize, p: Predicate) -> usize {
    enumerate_graphs(&GeneratorConfig::new(n, p)).unwrap().len()
}

#[test]
fn all_graph_counts_match_labeled_oracle() {
    for n in 1..=6 {
        assert_eq!(count(n, Predicate::All), common::labeled_class_count(n, |_| true), "n={n}");
    }
}

#[test]
fn all_graph_counts_match_burnside() {
    for n in 1..=8 {
        assert_eq!(count(n, Predicate::All) as u128, common::burnside_graph_count(n), "n={n}");
    }
    assert_eq!(common::burnside_graph_count(8), 12346);
}

#[test]
fn wheel_free_counts_match_labeled_oracle() {
    for n in 1..=6 {
        let oracle = common::labeled_class_count(n, |g| !brute_force_contains_wheel(g));
        assert_eq!(count(n, Predicate::WheelFree), oracle, "n={n}");
        let connected = common::labeled_class_count(n, |g| g.is_connected() && !brute_force_contains_wheel(g));
        assert_eq!(count(n, Predicate::ConnectedWheelFree), connected, "n={n}");
    }
}

#[test]
fn pruned_generation_matches_filtered_census() {
    for n in 7..=8 {
        let all = enumerate_graphs(&GeneratorConfig::new(n, Predicate::All)).unwrap();
        let filtered: HashSet<_> = all
            .forms
            .iter()
            .filter(|f| is_wheel_free(&f.to_graph()))
            .copied()
            .collect();
        let pruned = enumerate_graphs(&GeneratorConfig::new(n, Predicate::WheelFree)).unwrap();
        assert_eq!(pruned.forms.iter().copied().collect::<HashSet<_>>(), filtered, "n={n}");
    }
    assert_eq!(count(7, Predicate::WheelFree), 573);
    assert_eq!(count(8, Predicate::WheelFree), 4675);
}

#[test]
fn spool_resumes_to_the_uninterrupted_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = GeneratorConfig::new(8, Predicate::WheelFree);

    let full = dir.path().join("full.g6");
    let full_ck = dir.path().join("full.ck");
    let report = spool_enumeration(&config, &full, &full_ck).unwrap();
    assert!(report.exhaustive);
    assert_eq!(report.written, 4675);
    assert_eq!(report.resumed_after, None);

    let part = dir.path().join("part.g6");
    let part_ck = dir.path().join("part.ck");
    let limited = config.with_budget(Budget {
        max_seconds: None,
        max_graphs: Some(1500),
    });
    let first = spool_enumeration(&limited, &part, &part_ck).unwrap();
    assert!(!first.exhaustive);
    assert_eq!(first.written, 1500);

    // simulate a crash mid-write
    let mut text = fs::read_to_string(&part).unwrap();
    text.push_str("G?");
    fs::write(&part, text).unwrap();

    let second = spool_enumeration(&config, &part, &part_ck).unwrap();
    assert!(second.exhaustive);
    assert!(second.resumed_after.is_some());
    assert_eq!(second.written, 4675);
    assert_eq!(fs::read_to_string(&part).unwrap(), fs::read_to_string(&full).unwrap());

    let lines = fs::read_to_string(&full).unwrap();
    let forms: HashSet<_> = lines
        .lines()
        .map(|l| canonical_form(&from_graph6(l).unwrap()).unwrap())
        .collect();
    assert_eq!(forms.len(), 4675);
}

#[test]
fn spool_rejects_foreign_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    fs::write(&ck, "6\n3\n").unwrap();
    let out = dir.path().join("out.g6");
    assert!(spool_enumeration(&GeneratorConfig::new(7, Predicate::WheelFree), &out, &ck).is_err());
    fs::write(&ck, "garbage\n").unwrap();
    assert!(spool_enumeration(&GeneratorConfig::new(7, Predicate::WheelFree), &out, &ck).is_err());
}
