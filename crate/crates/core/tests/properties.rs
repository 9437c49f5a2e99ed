mod common;

use proptest::prelude::*;
use wheelfree::enumerate::{enumerate_graphs, GeneratorConfig, Predicate};
use wheelfree::graph6::{from_graph6, to_graph6};
use wheelfree::partition::{coarsest_equitable, is_equitable, lemma1_check};
use wheelfree::spectral::{
    adjacency_matrix, fast_spectral_radius, row_sum_bounds, signless_laplacian, spectral_radius, walk_count_r,
    MatrixKind, DEFAULT_TOL,
};
use wheelfree::wheel::{brute_force_contains_wheel, find_wheel_witness, is_wheel_free};
use wheelfree::{Graph, VertexSet};

fn corpus() -> Vec<Graph> {
    let mut rng = common::rng(0x5eed);
    (0..1000).map(|_| common::random_connected(&mut rng, 12)).collect()
}

#[test]
fn row_sum_bounds_bracket_the_radius() {
    for g in corpus() {
        for m in [adjacency_matrix(&g), signless_laplacian(&g)] {
            let r = spectral_radius(&m, DEFAULT_TOL).unwrap();
            let (lo, hi) = row_sum_bounds(&m);
            assert!(lo - 1e-9 <= r.radius && r.radius <= hi + 1e-9, "{}", to_graph6(&g));
            let regular = (hi - lo).abs() < 1e-12;
            let both_tight = (r.radius - lo).abs() < 1e-9 && (r.radius - hi).abs() < 1e-9;
            assert_eq!(regular, both_tight, "{}", to_graph6(&g));
            assert!(r.residual <= 1e-10);
            assert!(r.perron.iter().all(|&x| x > 0.0), "connected graphs have a positive Perron vector");
        }
    }
}

#[test]
fn walk_counts_are_square_row_sums() {
    for g in corpus() {
        let n = g.order();
        let a = adjacency_matrix(&g);
        for v in 0..n {
            let square_row: f64 = (0..n).map(|w| (0..n).map(|k| a.get(v, k) * a.get(k, w)).sum::<f64>()).sum();
            assert_eq!(walk_count_r(&g, v).unwrap() as f64, square_row);
        }
    }
}

#[test]
fn power_path_agrees_with_jacobi() {
    for g in corpus().into_iter().take(300) {
        for m in [adjacency_matrix(&g), signless_laplacian(&g)] {
            let slow = spectral_radius(&m, DEFAULT_TOL).unwrap();
            let fast = fast_spectral_radius(&m, DEFAULT_TOL).unwrap();
            assert!((slow.radius - fast.radius).abs() <= 1e-10);
            assert!(fast.residual <= 1e-10);
        }
    }
}

#[test]
fn regular_graphs_shift_by_degree() {
    for g in [
        Graph::cycle(9).unwrap(),
        Graph::complete(6).unwrap(),
        Graph::f7(),
        from_graph6("IheA@GUAo").unwrap(),
    ] {
        let k = g.degree(0);
        assert!(g.degrees().iter().all(|&d| d == k));
        let a = spectral_radius(&adjacency_matrix(&g), DEFAULT_TOL).unwrap().radius;
        let q = spectral_radius(&signless_laplacian(&g), DEFAULT_TOL).unwrap().radius;
        assert!((q - a - k as f64).abs() < 1e-9);
    }
}

#[test]
fn quotients_of_small_connected_graphs() {
    let mut checked = 0;
    for n in 1..=8 {
        let all = enumerate_graphs(&GeneratorConfig::new(n, Predicate::All)).unwrap();
        for g in all.graphs().filter(Graph::is_connected) {
            for kind in [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian] {
                let p = coarsest_equitable(&g, kind);
                assert!(is_equitable(&g, &p, kind).unwrap());
                let c = lemma1_check(&g, &p, kind, 1e-9).unwrap();
                assert!(c.holds, "{} {:?}", to_graph6(&g), kind);
                checked += 1;
            }
        }
    }
    // connected graphs on 1..=8 vertices: 1+1+2+6+21+112+853+11117
    assert_eq!(checked, 2 * 12113);
}

#[test]
fn wheel_oracle_matches_brute_force_on_random_graphs() {
    let mut rng = common::rng(7);
    for _ in 0..400 {
        let n = 4 + (rand::Rng::gen_range(&mut rng, 0..6));
        let g = common::random_graph(&mut rng, n, 0.55);
        let free = is_wheel_free(&g);
        assert_eq!(free, !brute_force_contains_wheel(&g));
        match find_wheel_witness(&g) {
            Some(w) => assert!(!free && w.validate(&g)),
            None => assert!(free),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(n in 1usize..=64, seed in any::<u64>(), p in 0.0f64..1.0) {
        let mut rng = common::rng(seed);
        let g = common::random_graph(&mut rng, n, p);
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn wheel_freeness_is_hereditary(seed in any::<u64>(), n in 4usize..=11) {
        let mut rng = common::rng(seed);
        let g = common::random_graph(&mut rng, n, 0.4);
        if is_wheel_free(&g) {
            for v in 0..n {
                prop_assert!(is_wheel_free(&g.delete_vertex(v).unwrap()));
            }
            for (u, v) in g.edges() {
                prop_assert!(is_wheel_free(&g.delete_edge(u, v).unwrap()));
            }
        }
    }

    #[test]
    fn neighborhoods_are_forests_iff_wheel_free(seed in any::<u64>(), n in 4usize..=10, p in 0.2f64..0.8) {
        let mut rng = common::rng(seed);
        let g = common::random_graph(&mut rng, n, p);
        let forests = (0..n).all(|v| {
            let s: VertexSet = g.neighbors(v);
            g.edges_within(s) + g.components_within(s).len() == s.len()
        });
        prop_assert_eq!(forests, is_wheel_free(&g));
    }

    #[test]
    fn radius_is_relabeling_invariant(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_connected(&mut rng, 12);
        let perm = common::random_permutation(&mut rng, g.order());
        let h = g.permute(&perm).unwrap();
        for kind in [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian] {
            let a = spectral_radius(&kind.matrix(&g), DEFAULT_TOL).unwrap().radius;
            let b = spectral_radius(&kind.matrix(&h), DEFAULT_TOL).unwrap().radius;
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
