//! Ancestry of nodes in `G_t`, recovered from the clone index rule.
//!
//! A node of `G_t` is identified by its ancestor in `G_0` and one bit per
//! step: `1` if it was created as a clone at that step, `0` if it already
//! existed. Because the clone of `i` at a step from `n` nodes is `i + n`,
//! the bits fall out of the index by repeated comparison with `n_s`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

const SIDECAR_MAGIC: &str = "ilt-lineage v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lineage {
    pub ancestor: NodeId,
    /// `bits[s - 1]` records step `s` (the transition `G_{s-1} -> G_s`).
    pub bits: Vec<bool>,
    /// Number of survivor (`0`) steps.
    pub zero_count: usize,
}

impl Lineage {
    pub fn new(ancestor: NodeId, bits: Vec<bool>) -> Self {
        let zero_count = bits.iter().filter(|&&b| !b).count();
        Lineage {
            ancestor,
            bits,
            zero_count,
        }
    }

    pub fn steps(&self) -> usize {
        self.bits.len()
    }

    /// Inverse of [`lineage_of`].
    pub fn index(&self, n0: usize) -> NodeId {
        let mut v = self.ancestor;
        let mut n = n0;
        for &bit in &self.bits {
            if bit {
                v += n;
            }
            n *= 2;
        }
        v
    }

    /// Bits as `0`/`1` characters, step 1 first.
    pub fn bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Lineage of node `v` in `G_t` grown from an `n0`-node seed.
///
/// # Panics
/// If `v >= 2^t * n0`.
pub fn lineage_of(v: NodeId, t: usize, n0: usize) -> Lineage {
    let n_t = n0 << t;
    assert!(v < n_t, "node {v} does not exist in G_{t} (order {n_t})");
    let mut bits = vec![false; t];
    let mut v = v;
    for s in (1..=t).rev() {
        let n_prev = n0 << (s - 1);
        if v >= n_prev {
            bits[s - 1] = true;
            v -= n_prev;
        }
    }
    Lineage::new(v, bits)
}

/// `(lower, upper)` degree bounds for a node with this lineage whose ancestor
/// has degree `deg0`:
/// `2^k (deg0 + 1) + t - k - 1 <= deg_t <= 2^k (deg0 + t - k + 1) - 1`.
pub fn degree_bounds(lineage: &Lineage, deg0: u64) -> (u64, u64) {
    let t = lineage.steps() as u64;
    let k = lineage.zero_count as u64;
    let scale = 1u64 << k;
    let lower = scale * (deg0 + 1) + t - k - 1;
    let upper = scale * (deg0 + t - k + 1) - 1;
    (lower, upper)
}

/// Writes the `ilt-lineage v1` sidecar for every node of `G_t`.
pub fn lineage_sidecar(t: usize, n0: usize) -> String {
    let n_t = n0 << t;
    let mut out = String::with_capacity(n_t * (t + 12));
    let _ = writeln!(out, "{SIDECAR_MAGIC}");
    for v in 0..n_t {
        let l = lineage_of(v, t, n0);
        let bits = if t == 0 { "-".to_string() } else { l.bitstring() };
        let _ = writeln!(out, "{v} {} {bits}", l.ancestor);
    }
    out
}

pub fn parse_lineage_sidecar(text: &str) -> Result<Vec<(NodeId, Lineage)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match lines.next() {
        Some((_, l)) if l.trim() == SIDECAR_MAGIC => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected `{SIDECAR_MAGIC}` header"),
            })
        }
    }
    lines
        .map(|(idx, line)| {
            let err = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let mut fields = line.split_whitespace();
            let index = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| err("bad index"))?;
            let ancestor = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| err("bad ancestor"))?;
            let raw = fields.next().ok_or_else(|| err("missing bitstring"))?;
            let bits = if raw == "-" {
                Vec::new()
            } else {
                raw.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(err("bitstring must be 0/1")),
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            Ok((index, Lineage::new(ancestor, bits)))
        })
        .collect()
}

/// Edges of `G_t` grouped by the ancestors of their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassCounts {
    /// Edges `xy` whose ancestors form the edge `uv` of `G_0`, keyed `(u, v)`
    /// with `u < v`.
    pub across: BTreeMap<(NodeId, NodeId), u64>,
    /// Edges whose endpoints share ancestor `v`.
    pub within: Vec<u64>,
}

/// Classifies every edge of `g_t` (grown for `t` steps from `g0`) by the
/// ancestors of its endpoints.
pub fn edge_class_counts(g0: &Graph, g_t: &Graph, t: usize) -> Result<EdgeClassCounts> {
    let n0 = g0.node_count();
    if g_t.node_count() != n0 << t {
        return Err(Error::invalid(format!(
            "graph has {} nodes, expected {} for t={t}",
            g_t.node_count(),
            n0 << t
        )));
    }
    let ancestor = |v: NodeId| v % n0;
    let mut across = BTreeMap::new();
    let mut within = vec![0u64; n0];
    for (x, y) in g_t.edges() {
        let (u, v) = (ancestor(x), ancestor(y));
        if u == v {
            within[u] += 1;
        } else {
            if !g0.has_edge(u, v) {
                return Err(Error::invalid(format!(
                    "edge {x}-{y} joins descendants of non-adjacent {u} and {v}"
                )));
            }
            *across.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    Ok(EdgeClassCounts { across, within })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{ilt_sequence, ilt_step, GrowthBudget};
    use crate::seeds;

    /// Replays generation while carrying each node's lineage explicitly.
    fn tracked_lineages(n0: usize, t: usize) -> Vec<Lineage> {
        let mut current: Vec<Lineage> = (0..n0).map(|a| Lineage::new(a, vec![])).collect();
        for _ in 0..t {
            let mut next: Vec<Lineage> = current
                .iter()
                .map(|l| {
                    let mut bits = l.bits.clone();
                    bits.push(false);
                    Lineage::new(l.ancestor, bits)
                })
                .collect();
            next.extend(current.iter().map(|l| {
                let mut bits = l.bits.clone();
                bits.push(true);
                Lineage::new(l.ancestor, bits)
            }));
            current = next;
        }
        current
    }

    #[test]
    fn survivor_and_all_clone_lineages() {
        let l = lineage_of(0, 3, 1);
        assert_eq!((l.bitstring().as_str(), l.zero_count), ("000", 3));
        let l = lineage_of(7, 3, 1);
        assert_eq!((l.bitstring().as_str(), l.zero_count), ("111", 0));
    }

    #[test]
    fn index_arithmetic_matches_tracked_replay() {
        for (n0, t) in [(1, 5), (4, 4), (5, 3), (10, 2)] {
            let tracked = tracked_lineages(n0, t);
            for (v, expected) in tracked.iter().enumerate() {
                let got = lineage_of(v, t, n0);
                assert_eq!(&got, expected, "n0={n0} t={t} v={v}");
                assert_eq!(got.index(n0), v);
            }
        }
    }

    #[test]
    fn degree_bounds_extreme_sequences() {
        // all survivor steps: iterate d -> 2d + 1
        let l = Lineage::new(0, vec![false; 4]);
        let (lo, hi) = degree_bounds(&l, 3);
        let iterated = (0..4).fold(3u64, |d, _| 2 * d + 1);
        assert_eq!((lo, hi), (iterated, iterated));
        // all clone steps: iterate d -> d + 1
        let l = Lineage::new(0, vec![true; 4]);
        assert_eq!(degree_bounds(&l, 3), (7, 7));
    }

    #[test]
    fn c4_degrees_within_bounds_for_one_survivor_step() {
        let g0 = seeds::cycle(4);
        let g3 = &ilt_sequence(&g0, 3, &GrowthBudget::default()).unwrap()[3];
        let mut seen = 0;
        for v in 0..g3.node_count() {
            let l = lineage_of(v, 3, 4);
            let (lo, hi) = degree_bounds(&l, g0.degree(l.ancestor) as u64);
            assert!((lo..=hi).contains(&(g3.degree(v) as u64)));
            if l.zero_count == 1 {
                assert_eq!((lo, hi), (7, 9));
                seen += 1;
            }
        }
        assert_eq!(seen, 12);
    }

    #[test]
    fn sidecar_roundtrip() {
        let text = lineage_sidecar(3, 2);
        let parsed = parse_lineage_sidecar(&text).unwrap();
        assert_eq!(parsed.len(), 16);
        for (v, l) in parsed {
            assert_eq!(l, lineage_of(v, 3, 2));
        }
        assert_eq!(lineage_sidecar(0, 1), "ilt-lineage v1\n0 0 -\n");
        assert!(parse_lineage_sidecar("0 0 1\n").is_err());
    }

    #[test]
    fn edge_classes_on_c4() {
        let g0 = seeds::cycle(4);
        let mut g = g0.clone();
        for t in 1..=4 {
            g = ilt_step(&g);
            let counts = edge_class_counts(&g0, &g, t).unwrap();
            assert!(counts.across.values().all(|&c| c == 3u64.pow(t as u32)));
            assert_eq!(counts.across.len(), 4);
            assert!(counts.within.iter().all(|&c| c == 3u64.pow(t as u32) - 2u64.pow(t as u32)));
        }
    }
}
