//! Built-in initial graphs and seed resolution.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Names accepted by [`named`].
pub const NAMES: [&str; 8] = ["k1", "k2", "k3", "c4", "c5", "p4", "p5", "petersen"];

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph edges are valid")
}

/// # Panics
/// If `n < 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 nodes");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i` to `i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("petersen edges are valid")
}

pub fn named(name: &str) -> Result<Graph> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "k1" => complete(1),
        "k2" => complete(2),
        "k3" => complete(3),
        "c4" => cycle(4),
        "c5" => cycle(5),
        "p4" => path(4),
        "p5" => path(5),
        "petersen" => petersen(),
        other => {
            return Err(Error::invalid(format!(
                "unknown seed graph `{other}` (known: {})",
                NAMES.join(", ")
            )))
        }
    })
}

/// Resolves a built-in name, falling back to a graph file path.
pub fn resolve(spec: &str) -> Result<Graph> {
    if NAMES.contains(&spec.to_ascii_lowercase().as_str()) {
        return named(spec);
    }
    let path = Path::new(spec);
    if path.exists() {
        let file = std::fs::File::open(path)?;
        return Graph::read_text(std::io::BufReader::new(file));
    }
    named(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_seed_sizes() {
        let expected = [(1, 0), (2, 1), (3, 3), (4, 4), (5, 5), (4, 3), (5, 4), (10, 15)];
        for (name, (n, m)) in NAMES.iter().zip(expected) {
            let g = named(name).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (n, m), "{name}");
            assert!(g.is_connected());
        }
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(named("k9").is_err());
        assert!(resolve("definitely-not-a-file").is_err());
    }
}
