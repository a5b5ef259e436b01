//! Immutable simple undirected graphs in compressed sparse row form.
//!
//! Every node `i` owns the slice `neighbors[offsets[i]..offsets[i + 1]]`,
//! sorted ascending. Node indices are dense in `0..node_count` and are never
//! renumbered by the generators, so node `i` of `G_t` is node `i` of `G_{t+1}`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::BufRead;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Marker returned by [`Graph::bfs_distances`] for nodes outside the source's
/// component.
pub const UNREACHABLE: u32 = u32::MAX;

const TEXT_MAGIC: &str = "ilt-graph v1";

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count())
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

impl Graph {
    /// The graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::budget(format!("{n} nodes do not fit 32-bit indices")));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at node {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_lists(&adj))
    }

    /// Packs per-node sorted, duplicate-free, symmetric neighbor lists.
    pub(crate) fn from_sorted_lists(adj: &[Vec<u32>]) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        let total: usize = adj.iter().map(Vec::len).sum();
        let mut neighbors = Vec::with_capacity(total);
        for list in adj {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let g = Graph {
            offsets,
            neighbors,
            edge_count: total / 2,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    /// Trusted constructor for generators that emit CSR arrays directly.
    pub(crate) fn from_csr(offsets: Vec<usize>, neighbors: Vec<u32>) -> Self {
        let edge_count = neighbors.len() / 2;
        let g = Graph {
            offsets,
            neighbors,
            edge_count,
        };
        // full validation is quadratic-ish on dense outputs; spot-check small ones
        debug_assert!(g.node_count() > 1 << 11 || g.check_invariants().is_ok());
        g
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sum of degrees, always `2 * edge_count`.
    pub fn volume(&self) -> usize {
        self.neighbors.len()
    }

    /// # Panics
    /// If `v` is not a node of the graph.
    pub fn degree(&self, v: NodeId) -> usize {
        assert!(
            v < self.node_count(),
            "node {v} out of range for graph with {} nodes",
            self.node_count()
        );
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.node_count()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        n > 0 && self.edge_count == n * (n - 1) / 2
    }

    /// Unweighted shortest-path distances from `source`; nodes in other
    /// components get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: NodeId) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.node_count()];
        self.bfs_into(source, &mut dist, &mut VecDeque::new());
        dist
    }

    /// BFS reusing caller buffers; `dist` must have length `node_count`.
    pub(crate) fn bfs_into(&self, source: NodeId, dist: &mut [u32], queue: &mut VecDeque<u32>) {
        dist.fill(UNREACHABLE);
        queue.clear();
        dist[source] = 0;
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u as usize) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        n <= 1 || self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Returns a copy with the extra edge `u v`. Used by fault injection.
    pub fn with_edge(&self, u: NodeId, v: NodeId) -> Result<Graph> {
        Graph::from_edges(self.node_count(), self.edges().chain(std::iter::once((u, v))))
    }

    /// Dense 0/1 adjacency rows packed into 64-bit words.
    pub fn adjacency_bits(&self) -> Vec<Vec<u64>> {
        let n = self.node_count();
        let words = n.div_ceil(64);
        (0..n)
            .map(|v| {
                let mut row = vec![0u64; words];
                for &w in self.neighbors(v) {
                    row[w as usize / 64] |= 1 << (w % 64);
                }
                row
            })
            .collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.node_count();
        let mut degree_sum = 0;
        for v in 0..n {
            let list = self.neighbors(v);
            degree_sum += list.len();
            for pair in list.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::invalid(format!("adjacency of {v} not strictly sorted")));
                }
            }
            for &w in list {
                let w = w as usize;
                if w == v {
                    return Err(Error::invalid(format!("self-loop at {v}")));
                }
                if w >= n || self.neighbors(w).binary_search(&(v as u32)).is_err() {
                    return Err(Error::invalid(format!("edge {v}-{w} not symmetric")));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::invalid("volume differs from twice the edge count"));
        }
        Ok(())
    }

    /// Serializes to the `ilt-graph v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count * 12);
        let _ = writeln!(out, "{TEXT_MAGIC} {} {}", self.node_count(), self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the `ilt-graph v1` text format. Lines starting with `#` are
    /// comments. Edge lines must have `u < v` and no edge may repeat.
    pub fn parse_text(text: &str) -> Result<Graph> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno, msg };
            match header {
                None => {
                    let rest = trimmed
                        .strip_prefix(TEXT_MAGIC)
                        .ok_or_else(|| err(format!("expected header `{TEXT_MAGIC} <n> <m>`")))?;
                    let mut fields = rest.split_whitespace();
                    let n = parse_field(fields.next(), "node count").map_err(err)?;
                    let m = parse_field(fields.next(), "edge count").map_err(err)?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields in header".into()));
                    }
                    header = Some((n, m));
                    edges.reserve(m);
                }
                Some((n, _)) => {
                    let mut fields = trimmed.split_whitespace();
                    let u = parse_field(fields.next(), "edge endpoint").map_err(err)?;
                    let v = parse_field(fields.next(), "edge endpoint").map_err(err)?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields in edge line".into()));
                    }
                    if u >= v {
                        return Err(err(format!("edge `{u} {v}` must satisfy u < v")));
                    }
                    if v >= n {
                        return Err(err(format!("endpoint {v} out of range for {n} nodes")));
                    }
                    edges.push((u, v));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        let g = Graph::from_edges(n, edges)?;
        if g.edge_count() != m {
            return Err(Error::Parse {
                line: 0,
                msg: "duplicate edge lines".into(),
            });
        }
        Ok(g)
    }
}

fn parse_field(field: Option<&str>, what: &str) -> std::result::Result<usize, String> {
    let field = field.ok_or_else(|| format!("missing {what}"))?;
    field
        .parse::<usize>()
        .map_err(|_| format!("invalid {what} `{field}`"))
}

/// A node subset `X` together with the volume bookkeeping of the
/// expander mixing lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub member_flags: Vec<bool>,
    pub vol_x: u64,
    pub vol_xbar: u64,
    /// Unordered edges with both ends in `X`.
    pub e_xx: u64,
}

impl Partition {
    pub fn new(g: &Graph, member_flags: Vec<bool>) -> Result<Self> {
        if member_flags.len() != g.node_count() {
            return Err(Error::invalid(format!(
                "partition has {} flags for {} nodes",
                member_flags.len(),
                g.node_count()
            )));
        }
        let mut vol_x = 0u64;
        let mut e_xx = 0u64;
        for v in 0..g.node_count() {
            if member_flags[v] {
                vol_x += g.degree(v) as u64;
                e_xx += g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| (w as usize) > v && member_flags[w as usize])
                    .count() as u64;
            }
        }
        Ok(Partition {
            vol_xbar: g.volume() as u64 - vol_x,
            member_flags,
            vol_x,
            e_xx,
        })
    }

    pub fn from_members(g: &Graph, members: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let mut flags = vec![false; g.node_count()];
        for v in members {
            if v >= g.node_count() {
                return Err(Error::invalid(format!("member {v} out of range")));
            }
            flags[v] = true;
        }
        Self::new(g, flags)
    }

    pub fn is_independent(&self) -> bool {
        self.e_xx == 0
    }
}

/// Certified lower bound `vol(X)/vol(X̄)` on the normalized-Laplacian gap,
/// valid when `X` is independent.
pub fn mixing_bound(part: &Partition) -> Result<Ratio<u64>> {
    if !part.is_independent() {
        return Err(Error::invalid(format!(
            "set is not independent ({} internal edges)",
            part.e_xx
        )));
    }
    if part.vol_xbar == 0 {
        return Err(Error::invalid("complement has zero volume"));
    }
    Ok(Ratio::new(part.vol_x, part.vol_xbar))
}
