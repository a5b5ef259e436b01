//! The deterministic ILT process and its closed-form growth predictions.
//!
//! One step clones every node: the clone of node `i` of an `n`-node graph is
//! node `i + n`, joined to `i` and to every neighbor of `i`. Clones are never
//! joined to each other.

mod lineage;
mod random;

pub use lineage::{degree_bounds, edge_class_counts, lineage_of, parse_lineage_sidecar, lineage_sidecar, EdgeClassCounts, Lineage};
pub use random::{
    gnp, ilt_p_step, p_of_n, IltPConfig, IltPProcess, PairSampling, PairStreams, RNG_NAME,
};

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Environment variable overriding [`GrowthBudget::max_nodes`].
pub const BUDGET_ENV: &str = "ILT_BUDGET_NODES";

/// Caps on the size of generated graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthBudget {
    pub max_nodes: u64,
    pub max_edges: u64,
}

impl Default for GrowthBudget {
    fn default() -> Self {
        GrowthBudget {
            max_nodes: 1 << 25,
            max_edges: 1 << 30,
        }
    }
}

impl GrowthBudget {
    pub fn unlimited() -> Self {
        GrowthBudget {
            max_nodes: u64::MAX,
            max_edges: u64::MAX,
        }
    }

    /// Default budget with the node cap taken from `ILT_BUDGET_NODES` when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            budget.max_nodes = raw
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{BUDGET_ENV}=`{raw}` is not an integer")))?;
        }
        Ok(budget)
    }

    /// Fails on the first step `s <= t` whose predicted size exceeds a cap.
    pub fn check(&self, n0: usize, e0: usize, t: usize) -> Result<()> {
        for s in 0..=t {
            let p = GrowthPrediction::new(n0, e0, s);
            if p.n_t > BigUint::from(self.max_nodes) {
                return Err(Error::budget(format!(
                    "step t={s}: {} nodes exceed the cap of {}",
                    p.n_t, self.max_nodes
                )));
            }
            if p.e_t > BigUint::from(self.max_edges) {
                return Err(Error::budget(format!(
                    "step t={s}: {} edges exceed the cap of {}",
                    p.e_t, self.max_edges
                )));
            }
        }
        Ok(())
    }
}

/// Exact order, size and volume of `G_t` predicted from `(n0, e0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthPrediction {
    pub t: usize,
    pub n_t: BigUint,
    pub e_t: BigUint,
    pub vol_t: BigUint,
}

impl GrowthPrediction {
    pub fn new(n0: usize, e0: usize, t: usize) -> Self {
        let pow2 = BigUint::from(2u32).pow(t as u32);
        let pow3 = BigUint::from(3u32).pow(t as u32);
        let n0b = BigUint::from(n0);
        let e0b = BigUint::from(e0);
        let n_t = &pow2 * &n0b;
        // e_t = 3^t (e0 + n0) - n_t
        let e_t = &pow3 * (&e0b + &n0b) - &n_t;
        // vol_t = 3^t vol0 + 2 n0 (3^t - 2^t)
        let vol_t = &pow3 * (BigUint::from(2u32) * &e0b)
            + BigUint::from(2u32) * &n0b * (&pow3 - &pow2);
        GrowthPrediction { t, n_t, e_t, vol_t }
    }

    pub fn for_graph(g0: &Graph, t: usize) -> Self {
        Self::new(g0.node_count(), g0.edge_count(), t)
    }

    /// True when the generated graph has exactly the predicted counts.
    pub fn matches(&self, g: &Graph) -> bool {
        self.n_t == BigUint::from(g.node_count())
            && self.e_t == BigUint::from(g.edge_count())
            && self.vol_t == BigUint::from(g.volume())
    }
}

/// Average degree `(3/2)^t (vol0/n0 + 2) - 2` as an exact rational.
pub fn predicted_average_degree(n0: usize, vol0: usize, t: usize) -> BigRational {
    let three_halves = BigRational::new(3.into(), 2.into()).pow(t as i32);
    let base = BigRational::new(vol0.into(), n0.into()) + BigRational::from_integer(2.into());
    three_halves * base - BigRational::from_integer(2.into())
}

/// One deterministic ILT step.
pub fn ilt_step(g: &Graph) -> Graph {
    ilt_step_with_clone_edges(g, None)
}

/// Clone step plus optional extra edges among the new nodes. `extra[a]` lists
/// the clone-local indices `b` adjacent to clone `a`, sorted, symmetric.
pub(crate) fn ilt_step_with_clone_edges(g: &Graph, extra: Option<&[Vec<u32>]>) -> Graph {
    let n = g.node_count();
    assert!(2 * n <= u32::MAX as usize, "graph too large for 32-bit node ids");
    let n32 = n as u32;
    let extra_total: usize = extra.map_or(0, |e| e.iter().map(Vec::len).sum());
    let mut offsets = Vec::with_capacity(2 * n + 1);
    let mut nbrs = Vec::with_capacity(3 * g.volume() + 2 * n + extra_total);
    offsets.push(0);
    for i in 0..n {
        let adj = g.neighbors(i);
        let split = adj.partition_point(|&j| (j as usize) < i);
        nbrs.extend_from_slice(adj);
        nbrs.extend(adj[..split].iter().map(|&j| j + n32));
        nbrs.push(i as u32 + n32);
        nbrs.extend(adj[split..].iter().map(|&j| j + n32));
        offsets.push(nbrs.len());
    }
    for i in 0..n {
        let adj = g.neighbors(i);
        let split = adj.partition_point(|&j| (j as usize) < i);
        nbrs.extend_from_slice(&adj[..split]);
        nbrs.push(i as u32);
        nbrs.extend_from_slice(&adj[split..]);
        if let Some(extra) = extra {
            nbrs.extend(extra[i].iter().map(|&b| b + n32));
        }
        offsets.push(nbrs.len());
    }
    Graph::from_csr(offsets, nbrs)
}

/// `[G_0, ..., G_t]`, refusing up front if any step would exceed `budget`.
pub fn ilt_sequence(g0: &Graph, t: usize, budget: &GrowthBudget) -> Result<Vec<Graph>> {
    budget.check(g0.node_count(), g0.edge_count(), t)?;
    let mut seq = Vec::with_capacity(t + 1);
    seq.push(g0.clone());
    for _ in 0..t {
        let next = ilt_step(seq.last().expect("sequence is non-empty"));
        seq.push(next);
    }
    Ok(seq)
}

/// `G_t` alone, without keeping the intermediate graphs.
pub fn ilt_nth(g0: &Graph, t: usize, budget: &GrowthBudget) -> Result<Graph> {
    budget.check(g0.node_count(), g0.edge_count(), t)?;
    let mut g = g0.clone();
    for _ in 0..t {
        g = ilt_step(&g);
    }
    Ok(g)
}
