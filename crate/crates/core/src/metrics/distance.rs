use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHABLE};

/// Default cap on the order of graphs given exact all-pairs BFS.
pub const DEFAULT_EXACT_BFS_NODES: usize = 4096;

/// Exact all-pairs distance aggregates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceSummary {
    /// Sum of `d(x, y)` over unordered pairs.
    pub wiener: BigUint,
    pub diameter: u32,
}

/// All-pairs BFS, parallel over sources with an ordered reduction.
pub fn distance_summary(g: &Graph, max_nodes: usize) -> Result<DistanceSummary> {
    let n = g.node_count();
    if n > max_nodes {
        return Err(Error::budget(format!(
            "all-pairs BFS on {n} nodes exceeds the cap of {max_nodes}"
        )));
    }
    let per_source: Vec<Option<(u64, u32)>> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], VecDeque::new()),
            |(dist, queue), s| {
                g.bfs_into(s, dist, queue);
                let mut sum = 0u64;
                let mut ecc = 0u32;
                for &d in dist.iter() {
                    if d == UNREACHABLE {
                        return None;
                    }
                    sum += d as u64;
                    ecc = ecc.max(d);
                }
                Some((sum, ecc))
            },
        )
        .collect();
    let mut total = 0u128;
    let mut diameter = 0;
    for entry in per_source {
        let (sum, ecc) = entry.ok_or(Error::Disconnected)?;
        total += sum as u128;
        diameter = diameter.max(ecc);
    }
    Ok(DistanceSummary {
        wiener: BigUint::from(total / 2),
        diameter,
    })
}

pub fn wiener_index(g: &Graph) -> Result<BigUint> {
    Ok(distance_summary(g, DEFAULT_EXACT_BFS_NODES)?.wiener)
}

pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(distance_summary(g, DEFAULT_EXACT_BFS_NODES)?.diameter)
}

/// Mean distance over ordered pairs of distinct nodes, estimated from
/// `samples` uniformly drawn BFS sources. Never exact; for graphs beyond the
/// all-pairs cap.
pub fn estimate_average_distance(g: &Graph, samples: usize, seed: u64) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("average distance needs two nodes"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources: Vec<usize> = (0..samples).map(|_| rng.gen_range(0..n)).collect();
    let sums: Vec<Option<u64>> = sources
        .par_iter()
        .map(|&s| {
            let d = g.bfs_distances(s);
            d.iter()
                .try_fold(0u64, |acc, &x| (x != UNREACHABLE).then_some(acc + x as u64))
        })
        .collect();
    let mut total = 0u64;
    for s in sums {
        total += s.ok_or(Error::Disconnected)?;
    }
    Ok(total as f64 / (samples as f64 * (n - 1) as f64))
}

/// `(W, e, n)` of an initial graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedStats {
    pub wiener: BigUint,
    pub edges: u64,
    pub nodes: u64,
}

impl SeedStats {
    pub fn new(wiener: impl Into<BigUint>, edges: u64, nodes: u64) -> Self {
        SeedStats {
            wiener: wiener.into(),
            edges,
            nodes,
        }
    }

    pub fn of(g0: &Graph) -> Result<Self> {
        Ok(SeedStats {
            wiener: wiener_index(g0)?,
            edges: g0.edge_count() as u64,
            nodes: g0.node_count() as u64,
        })
    }
}

/// `4^t W0 + (4^t - 3^t)(e0 + n0)`, the closed form of
/// `4^t (W0 + (e0 + n0)(1 - (3/4)^t))` without fractions.
pub fn predicted_wiener(stats: &SeedStats, t: usize) -> BigUint {
    let p4 = BigUint::from(4u32).pow(t as u32);
    let p3 = BigUint::from(3u32).pow(t as u32);
    &p4 * &stats.wiener + (p4 - p3) * (stats.edges + stats.nodes)
}

/// `W / C(n, 2)`.
pub fn average_distance_unordered(wiener: &BigUint, n: u64) -> Option<BigRational> {
    (n >= 2).then(|| {
        BigRational::new(
            BigInt::from(wiener.clone()),
            BigInt::from(n) * BigInt::from(n - 1) / 2,
        )
    })
}

/// `W / (n² - n)`, the denominator used by the closed-form average distance.
pub fn average_distance_ordered(wiener: &BigUint, n: u64) -> Option<BigRational> {
    (n >= 2).then(|| BigRational::new(BigInt::from(wiener.clone()), BigInt::from(n) * BigInt::from(n - 1)))
}

/// Closed form `4^t (W0 + (e0+n0)(1-(3/4)^t)) / (4^t n0² - 2^t n0)`.
pub fn predicted_average_distance_ordered(stats: &SeedStats, t: usize) -> Option<BigRational> {
    let n0 = BigInt::from(stats.nodes);
    let p4 = BigInt::from(4u32).pow(t as u32);
    let p2 = BigInt::from(2u32).pow(t as u32);
    let den = &p4 * &n0 * &n0 - &p2 * &n0;
    if den == BigInt::from(0) {
        return None;
    }
    let num = BigInt::from(predicted_wiener(stats, t));
    Some(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltimateDistance {
    /// `(W0 + e0 + n0) / n0²`.
    pub value: BigRational,
    /// `W0 >= (n0 - 1)(e0 + n0)`, i.e. the limit is at most the initial
    /// ordered-pair average distance.
    pub at_most_initial: bool,
}

pub fn ultimate_average_distance(stats: &SeedStats) -> UltimateDistance {
    let n0 = BigInt::from(stats.nodes);
    let w0 = BigInt::from(stats.wiener.clone());
    let en = BigInt::from(stats.edges + stats.nodes);
    UltimateDistance {
        value: BigRational::new(&w0 + &en, &n0 * &n0),
        at_most_initial: w0 >= (n0 - 1) * en,
    }
}
