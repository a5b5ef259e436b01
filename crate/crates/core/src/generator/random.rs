//! The randomized ILT(p) process.
//!
//! After the clone step, each unordered pair of new nodes is joined
//! independently with probability `p(n) = δ n^{log2(3+δ)} / n^2`, `n` being
//! the number of new nodes.
//!
//! Randomness comes from ChaCha8 keyed by the user seed, with one stream per
//! `(step, row)`: row `a` decides the pairs `(a, b)` with `b > a` in order of
//! `b`. The output is therefore independent of how rows are scheduled over
//! worker threads.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ilt_step_with_clone_edges, GrowthBudget};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Identifies the pair-sampling stream layout. Bump when it changes.
pub const RNG_NAME: &str = "chacha8-row-streams/v1";

/// Stream domain used by [`gnp`], disjoint from every ILT(p) step.
const GNP_DOMAIN: u64 = (1 << 24) - 1;

/// Counter-addressed random streams derived from one 64-bit seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStreams {
    seed: u64,
}

impl PairStreams {
    pub fn new(seed: u64) -> Self {
        PairStreams { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn row(&self, domain: u64, row: u64) -> ChaCha8Rng {
        debug_assert!(domain < 1 << 24 && row < 1 << 40);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((domain << 40) | row);
        rng
    }
}

/// How candidate pairs are visited.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairSampling {
    /// One uniform draw per candidate pair.
    Bernoulli,
    /// Jump between successes with geometric gaps.
    GeometricSkip,
    /// Geometric skipping once the expected number of new edges exceeds `cap`.
    Auto { cap: f64 },
}

impl Default for PairSampling {
    fn default() -> Self {
        PairSampling::Auto { cap: 65_536.0 }
    }
}

impl PairSampling {
    fn resolve(self, n: usize, p: f64) -> PairSampling {
        match self {
            PairSampling::Auto { cap } => {
                let expected = (n as f64) * (n.saturating_sub(1) as f64) / 2.0 * p;
                if expected > cap {
                    PairSampling::GeometricSkip
                } else {
                    PairSampling::Bernoulli
                }
            }
            other => other,
        }
    }
}

/// Edge probability among `n` new nodes: `δ n^{log2(3+δ) - 2}`, clamped to
/// `[0, 1]`.
pub fn p_of_n(delta: f64, n: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::invalid(format!("delta {delta} outside [0, 1]")));
    }
    if n == 0 {
        return Err(Error::invalid("p(n) needs n >= 1"));
    }
    let exponent = (3.0 + delta).log2() - 2.0;
    Ok((delta * (n as f64).powf(exponent)).clamp(0.0, 1.0))
}

#[inline]
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Partners `b > a` of row `a` among `n` nodes.
fn sample_row(rng: &mut ChaCha8Rng, a: usize, n: usize, p: f64, method: PairSampling) -> Vec<u32> {
    if p <= 0.0 || a + 1 >= n {
        return Vec::new();
    }
    if p >= 1.0 {
        return (a as u32 + 1..n as u32).collect();
    }
    let mut out = Vec::new();
    match method {
        PairSampling::Bernoulli | PairSampling::Auto { .. } => {
            for b in a + 1..n {
                if unit(rng) < p {
                    out.push(b as u32);
                }
            }
        }
        PairSampling::GeometricSkip => {
            let log_q = (1.0 - p).ln();
            let mut b = a + 1;
            loop {
                // failures before the next success
                let u = 1.0 - unit(rng);
                let skip = (u.ln() / log_q).floor();
                if !skip.is_finite() || skip >= (n - b) as f64 {
                    break;
                }
                b += skip as usize;
                out.push(b as u32);
                b += 1;
                if b >= n {
                    break;
                }
            }
        }
    }
    out
}

/// Symmetric sorted adjacency among `n` nodes where each pair is present
/// independently with probability `p`.
fn sample_pairs(n: usize, p: f64, streams: &PairStreams, domain: u64, method: PairSampling) -> Vec<Vec<u32>> {
    let method = method.resolve(n, p);
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut rng = streams.row(domain, a as u64);
            sample_row(&mut rng, a, n, p, method)
        })
        .collect();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    // lower partners arrive in increasing `a`, so each list stays sorted
    for (a, row) in rows.iter().enumerate() {
        for &b in row {
            adj[b as usize].push(a as u32);
        }
    }
    for (a, row) in rows.into_iter().enumerate() {
        adj[a].extend(row);
    }
    adj
}

/// One ILT(p) step. `step` is the index of the graph being produced
/// (`1` for `H_1`), which selects the random streams.
pub fn ilt_p_step(
    g: &Graph,
    delta: f64,
    streams: &PairStreams,
    step: usize,
    sampling: PairSampling,
) -> Result<Graph> {
    let n = g.node_count();
    if n == 0 {
        return Ok(g.clone());
    }
    let p = p_of_n(delta, n as u64)?;
    if p == 0.0 {
        return Ok(ilt_step_with_clone_edges(g, None));
    }
    let extra = sample_pairs(n, p, streams, step as u64, sampling);
    Ok(ilt_step_with_clone_edges(g, Some(&extra)))
}

/// Erdős–Rényi `G(n, p)` drawn from the same stream family.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
    }
    let adj = sample_pairs(n, p, &PairStreams::new(seed), GNP_DOMAIN, PairSampling::default());
    Ok(Graph::from_sorted_lists(&adj))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IltPConfig {
    pub delta: f64,
    pub seed: u64,
    pub steps: usize,
}

impl IltPConfig {
    pub fn new(delta: f64, seed: u64, steps: usize) -> Result<Self> {
        let cfg = IltPConfig { delta, seed, steps };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::invalid(format!("delta {} outside [0, 1]", self.delta)));
        }
        if self.steps == 0 {
            return Err(Error::invalid("ILT(p) needs at least one step"));
        }
        Ok(())
    }

    /// Predicted densification exponent `log(3+δ)/log 2`.
    pub fn exponent(&self) -> f64 {
        (3.0 + self.delta).log2()
    }

    /// `(2 - δ - δ²) / (2(1 + δ))`, the leading term of the gap lower bound.
    pub fn gap_floor(&self) -> f64 {
        let d = self.delta;
        (2.0 - d - d * d) / (2.0 * (1.0 + d))
    }
}

/// Runs ILT(p) one step at a time from an initial graph (`K_1` in the
/// original model; any graph is accepted).
#[derive(Clone, Debug)]
pub struct IltPProcess {
    config: IltPConfig,
    streams: PairStreams,
    sampling: PairSampling,
    budget: GrowthBudget,
    current: Graph,
    t: usize,
}

impl IltPProcess {
    pub fn new(h0: Graph, config: IltPConfig) -> Result<Self> {
        config.validate()?;
        Ok(IltPProcess {
            streams: PairStreams::new(config.seed),
            config,
            sampling: PairSampling::default(),
            budget: GrowthBudget::default(),
            current: h0,
            t: 0,
        })
    }

    pub fn with_sampling(mut self, sampling: PairSampling) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn with_budget(mut self, budget: GrowthBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn current(&self) -> &Graph {
        &self.current
    }

    pub fn into_current(self) -> Graph {
        self.current
    }

    pub fn config(&self) -> &IltPConfig {
        &self.config
    }

    /// Produces `H_{t+1}`.
    pub fn advance(&mut self) -> Result<&Graph> {
        let next_t = self.t + 1;
        let n = self.current.node_count() as u64;
        if 2 * n > self.budget.max_nodes {
            return Err(Error::budget(format!(
                "step t={next_t}: {} nodes exceed the cap of {}",
                2 * n,
                self.budget.max_nodes
            )));
        }
        // worst case: every new pair joined
        let worst_edges = 3 * self.current.edge_count() as u64 + n + n * n.saturating_sub(1) / 2;
        if worst_edges > self.budget.max_edges {
            let p = p_of_n(self.config.delta, n.max(1))?;
            let expected = 3 * self.current.edge_count() as u64 + n + ((n * n.saturating_sub(1)) as f64 / 2.0 * p) as u64;
            if expected > self.budget.max_edges {
                return Err(Error::budget(format!(
                    "step t={next_t}: about {expected} edges exceed the cap of {}",
                    self.budget.max_edges
                )));
            }
        }
        self.current = ilt_p_step(&self.current, self.config.delta, &self.streams, next_t, self.sampling)?;
        self.t = next_t;
        Ok(&self.current)
    }

    /// Advances to `H_T` with `T = config.steps`, calling `observe` on every
    /// intermediate graph including `H_0`.
    pub fn run(mut self, mut observe: impl FnMut(usize, &Graph)) -> Result<Graph> {
        observe(0, &self.current);
        while self.t < self.config.steps {
            self.advance()?;
            observe(self.t, &self.current);
        }
        Ok(self.current)
    }
}
