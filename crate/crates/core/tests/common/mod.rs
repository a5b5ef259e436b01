#![allow(dead_code)]

use ilt::Graph;
use proptest::prelude::*;

/// Connected graphs on 1..=max_n nodes: a random tree plus random chords.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents = proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1));
            let chords = proptest::collection::vec((0..n, 0..n), 0..=n * 2);
            (Just(n), parents, chords)
        })
        .prop_map(|(n, parents, chords)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, p)| (p.index(i + 1), i + 1))
                .collect();
            edges.extend(chords.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))));
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, edges).expect("valid edges")
        })
}

/// All-pairs distances by Floyd-Warshall on a dense matrix.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.node_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// ILT step built from the definition with an adjacency matrix.
pub fn clone_step_oracle(g: &Graph) -> Graph {
    let n = g.node_count();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((u, v + n));
        edges.push((v, u + n));
    }
    for x in 0..n {
        edges.push((x, x + n));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    Graph::from_edges(2 * n, edges).expect("valid edges")
}
