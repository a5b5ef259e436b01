//! Library results against independent brute-force computations.

mod common;

use common::connected_graph;
use ilt::games::{automorphisms, cop_number, domination_number, is_cop_win, Permutation, DEFAULT_GROUP_BUDGET, DEFAULT_STATE_BUDGET};
use ilt::generator::ilt_step;
use ilt::seeds;
use ilt::spectral::{adjacency_spectrum, laplacian_spectrum};
use ilt::Graph;
use proptest::prelude::*;

fn brute_domination(g: &Graph) -> usize {
    let n = g.node_count();
    (1..=n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
                (0..n).all(|v| m >> v & 1 == 1 || g.neighbors(v).iter().any(|&w| m >> w & 1 == 1))
            })
        })
        .unwrap_or(0)
}

fn brute_automorphism_count(g: &Graph) -> usize {
    fn go(k: usize, p: &mut Vec<usize>, g: &Graph, count: &mut usize) {
        if k == p.len() {
            *count += Permutation::new(p.clone()).unwrap().is_automorphism(g) as usize;
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, g, count);
            p.swap(k, i);
        }
    }
    let mut count = 0;
    go(0, &mut (0..g.node_count()).collect(), g, &mut count);
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn domination_matches_subset_search(g in connected_graph(11)) {
        let d = domination_number(&g, 64).unwrap();
        prop_assert_eq!(d.number, brute_domination(&g));
        prop_assert_eq!(d.set.len(), d.number);
    }

    #[test]
    fn automorphism_count_matches_permutations(g in connected_graph(7)) {
        prop_assert_eq!(automorphisms(&g, DEFAULT_GROUP_BUDGET).unwrap().len(), brute_automorphism_count(&g));
    }

    #[test]
    fn one_cop_wins_iff_dismantlable(g in connected_graph(9)) {
        let c = cop_number(&g, 1, DEFAULT_STATE_BUDGET).unwrap();
        prop_assert_eq!(c.number == Some(1), is_cop_win(&g));
    }

    #[test]
    fn cop_number_at_most_domination(g in connected_graph(9)) {
        let gamma = domination_number(&g, 64).unwrap().number;
        let c = cop_number(&g, gamma.min(3), DEFAULT_STATE_BUDGET).unwrap();
        prop_assert!(c.number.is_some_and(|c| c <= gamma));
    }

    #[test]
    fn spectra_satisfy_trace_identities(g in connected_graph(14)) {
        prop_assume!(g.node_count() >= 2);
        let n = g.node_count() as f64;
        let lap = laplacian_spectrum(&g).unwrap().values;
        prop_assert!((lap.iter().sum::<f64>() - n).abs() < 1e-9);
        prop_assert!(lap[0].abs() < 1e-9);
        prop_assert!(lap.iter().all(|&x| x > -1e-9 && x < 2.0 + 1e-9));
        let adj = adjacency_spectrum(&g).unwrap().values;
        prop_assert!(adj.iter().sum::<f64>().abs() < 1e-9);
        let squares: f64 = adj.iter().map(|x| x * x).sum();
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() < 1e-8);
    }
}

#[test]
fn cycle_spectra_are_cosines() {
    for n in [5usize, 8, 13] {
        let mut expected: Vec<f64> = (0..n)
            .map(|k| 1.0 - (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        let got = laplacian_spectrum(&seeds::cycle(n)).unwrap().values;
        for (a, b) in expected.iter().zip(&got) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }
}

#[test]
fn complete_graph_from_one_node_has_known_gap() {
    // K_m has normalized Laplacian spectrum {0, m/(m-1) x (m-1)}
    let m = 16;
    let g = Graph::from_edges(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j)))).unwrap();
    let lap = laplacian_spectrum(&g).unwrap().values;
    assert!((lap[1] - m as f64 / (m - 1) as f64).abs() < 1e-12);
    assert!(ilt_step(&g).edge_count() > g.edge_count());
}
