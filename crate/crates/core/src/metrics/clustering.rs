use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::graph::{Graph, NodeId};

/// Number of edges inside `N(v)` for every node `v`, i.e. triangles at `v`.
///
/// Each edge is oriented from lower to higher `(degree, id)` rank and triangles
/// are found by intersecting forward lists, so each is seen exactly once.
pub fn neighbourhood_edge_counts(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let rank = |v: usize| (g.degree(v), v);
    let forward: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&w| rank(w as usize) > rank(u))
                .collect()
        })
        .collect();
    (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, u| {
                for &v in &forward[u] {
                    let (a, b) = (&forward[u], &forward[v as usize]);
                    let (mut i, mut j) = (0, 0);
                    while i < a.len() && j < b.len() {
                        match a[i].cmp(&b[j]) {
                            std::cmp::Ordering::Less => i += 1,
                            std::cmp::Ordering::Greater => j += 1,
                            std::cmp::Ordering::Equal => {
                                acc[u] += 1;
                                acc[v as usize] += 1;
                                acc[a[i] as usize] += 1;
                                i += 1;
                                j += 1;
                            }
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Edges inside `N(v)` for a single node.
pub fn neighbourhood_edges(g: &Graph, v: NodeId) -> u64 {
    let nbrs = g.neighbors(v);
    let mut count = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a as usize, b as usize) {
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    /// `e(v) / C(deg v, 2)`, zero for degree at most one.
    pub per_node: Vec<Ratio<u64>>,
    /// Exact mean of `per_node`.
    pub mean: BigRational,
}

impl Clustering {
    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn clustering(g: &Graph) -> Clustering {
    let counts = neighbourhood_edge_counts(g);
    let per_node: Vec<Ratio<u64>> = counts
        .iter()
        .enumerate()
        .map(|(v, &e)| {
            let d = g.degree(v) as u64;
            if d <= 1 {
                Ratio::zero()
            } else {
                Ratio::new(e, d * (d - 1) / 2)
            }
        })
        .collect();
    let n = per_node.len();
    let mean = if n == 0 {
        BigRational::zero()
    } else {
        // sum over the few distinct denominators before dividing
        let mut by_den: std::collections::BTreeMap<u64, u64> = Default::default();
        for r in &per_node {
            *by_den.entry(*r.denom()).or_insert(0) += *r.numer();
        }
        let sum = by_den
            .into_iter()
            .fold(BigRational::zero(), |acc, (den, num)| {
                acc + BigRational::new(BigInt::from(num), BigInt::from(den))
            });
        sum / BigRational::from_integer(BigInt::from(n))
    };
    Clustering { per_node, mean }
}
