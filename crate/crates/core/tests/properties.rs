mod common;

use common::{clone_step_oracle, connected_graph, floyd_warshall};
use ilt::generator::{ilt_nth, ilt_step, GrowthBudget, GrowthPrediction};
use ilt::metrics::{clustering, neighbourhood_edge_counts, predicted_wiener, wiener_index, SeedStats};
use ilt::Graph;
use num_bigint::BigUint;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(g in connected_graph(14)) {
        let text = g.to_text();
        let back = Graph::parse_text(&format!("# comment\n{text}")).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn volume_is_twice_edges(g in connected_graph(14)) {
        prop_assert_eq!(g.volume(), 2 * g.edge_count());
        let h = ilt_step(&g);
        prop_assert_eq!(h.volume(), 2 * h.edge_count());
        prop_assert!(h.check_invariants().is_ok());
    }

    #[test]
    fn bfs_is_a_metric(g in connected_graph(12)) {
        let n = g.node_count();
        let d: Vec<Vec<u32>> = (0..n).map(|s| g.bfs_distances(s)).collect();
        for a in 0..n {
            prop_assert_eq!(d[a][a], 0);
            for b in 0..n {
                prop_assert_eq!(d[a][b], d[b][a]);
                for c in 0..n {
                    prop_assert!(d[a][c] <= d[a][b] + d[b][c]);
                }
            }
        }
    }

    #[test]
    fn step_matches_definition(g in connected_graph(12)) {
        prop_assert_eq!(ilt_step(&g), clone_step_oracle(&g));
    }

    #[test]
    fn growth_identities_hold(g in connected_graph(10), t in 0usize..5) {
        let gt = ilt_nth(&g, t, &GrowthBudget::default()).unwrap();
        prop_assert!(GrowthPrediction::for_graph(&g, t).matches(&gt));
    }

    #[test]
    fn wiener_identity_against_floyd_warshall(g in connected_graph(9), t in 0usize..3) {
        let gt = ilt_nth(&g, t, &GrowthBudget::default()).unwrap();
        let d = floyd_warshall(&gt);
        let n = gt.node_count();
        let w: u64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| d[i][j]).sum();
        prop_assert_eq!(wiener_index(&gt).unwrap(), BigUint::from(w));
        let stats = SeedStats::of(&g).unwrap();
        prop_assert_eq!(predicted_wiener(&stats, t), BigUint::from(w));
    }

    #[test]
    fn distances_survive_a_step(g in connected_graph(10)) {
        let n = g.node_count();
        let h = ilt_step(&g);
        let dg = floyd_warshall(&g);
        let dh = floyd_warshall(&h);
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let base = dg[x][y];
                prop_assert_eq!(dh[x][y], base);
                prop_assert_eq!(dh[x + n][y], base);
                prop_assert_eq!(dh[x][y + n], base);
                let expected = if g.has_edge(x, y) { 2 } else { base };
                prop_assert_eq!(dh[x + n][y + n], expected);
            }
        }
    }

    #[test]
    fn neighbourhood_edges_against_brute_force(g in connected_graph(12)) {
        let counts = neighbourhood_edge_counts(&g);
        for (v, &c) in counts.iter().enumerate() {
            let nb = g.neighbors(v);
            let mut brute = 0u64;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    brute += g.has_edge(a as usize, b as usize) as u64;
                }
            }
            prop_assert_eq!(c, brute);
        }
        let c = clustering(&g);
        prop_assert!((0.0..=1.0).contains(&c.mean_f64()));
    }
}
