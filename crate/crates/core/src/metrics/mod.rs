//! Exact structural metrics of ILT graphs: size, distances, clustering and
//! degree distribution, plus the fits used for the asymptotic trends.

mod clustering;
mod degree;
mod distance;

pub use clustering::{clustering, neighbourhood_edge_counts, neighbourhood_edges, Clustering};
pub use degree::{DegreeHistogram, DEFAULT_HISTOGRAM_ENTRIES};
pub use distance::{
    average_distance_ordered, average_distance_unordered, diameter, distance_summary,
    estimate_average_distance, predicted_average_distance_ordered, predicted_wiener,
    ultimate_average_distance, wiener_index, DistanceSummary, SeedStats, UltimateDistance,
    DEFAULT_EXACT_BFS_NODES,
};

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fit::{exp_poly_fit, linear_fit, ExpPolyFit, LinearFit};
use crate::graph::Graph;
use crate::report;

/// Slope of `ln e_t` against `ln n_t`. Needs at least three points.
pub fn densification_exponent(sizes: &[(u64, u64)]) -> Result<f64> {
    if sizes.len() < 3 {
        return Err(Error::invalid("densification fit needs at least three graphs"));
    }
    if sizes.iter().any(|&(n, e)| n == 0 || e == 0) {
        return Err(Error::invalid("densification fit needs non-empty graphs"));
    }
    let xs: Vec<f64> = sizes.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = sizes.iter().map(|&(_, e)| (e as f64).ln()).collect();
    Ok(linear_fit(&xs, &ys)?.slope)
}

/// Decay of `ln C(G_t)` in `t`, raw and with a `t^c` correction removed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusteringTrend {
    pub raw: LinearFit,
    pub corrected: ExpPolyFit,
}

pub fn clustering_trend(points: &[(usize, f64)]) -> Result<ClusteringTrend> {
    if points.iter().any(|&(_, c)| c <= 0.0) {
        return Err(Error::invalid("clustering trend needs positive coefficients"));
    }
    let ts: Vec<f64> = points.iter().map(|&(t, _)| t as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, c)| c.ln()).collect();
    Ok(ClusteringTrend {
        raw: linear_fit(&ts, &ys)?,
        corrected: exp_poly_fit(&ts, &ys)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricsOptions {
    /// Largest order given exact all-pairs BFS.
    pub max_exact_nodes: usize,
    /// BFS sources for the estimate beyond `max_exact_nodes`.
    pub estimate_samples: usize,
    pub estimate_seed: u64,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions {
            max_exact_nodes: DEFAULT_EXACT_BFS_NODES,
            estimate_samples: 256,
            estimate_seed: 0x1_17,
        }
    }
}

/// Metrics of one graph of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub t: usize,
    pub nodes: u64,
    pub edges: u64,
    pub volume: u64,
    pub average_degree: BigRational,
    pub wiener: Option<BigUint>,
    pub average_distance_unordered: Option<BigRational>,
    pub average_distance_ordered: Option<BigRational>,
    /// Sampled ordered-pair estimate, only when exact BFS was skipped.
    pub average_distance_estimate: Option<f64>,
    pub diameter: Option<u32>,
    pub clustering: BigRational,
}

impl MetricsRow {
    pub fn compute(g: &Graph, t: usize, opts: &MetricsOptions) -> Result<Self> {
        let n = g.node_count() as u64;
        let (wiener, diameter, estimate) = if g.node_count() <= opts.max_exact_nodes {
            let s = distance_summary(g, opts.max_exact_nodes)?;
            (Some(s.wiener), Some(s.diameter), None)
        } else {
            let est = estimate_average_distance(g, opts.estimate_samples, opts.estimate_seed)?;
            (None, None, Some(est))
        };
        let average_degree = if n == 0 {
            BigRational::from_integer(0.into())
        } else {
            BigRational::new(BigInt::from(g.volume()), BigInt::from(n))
        };
        Ok(MetricsRow {
            t,
            nodes: n,
            edges: g.edge_count() as u64,
            volume: g.volume() as u64,
            average_degree,
            average_distance_unordered: wiener.as_ref().and_then(|w| average_distance_unordered(w, n)),
            average_distance_ordered: wiener.as_ref().and_then(|w| average_distance_ordered(w, n)),
            wiener,
            average_distance_estimate: estimate,
            diameter,
            clustering: clustering(g).mean,
        })
    }

    fn to_json(&self) -> Value {
        let opt_rat = |r: &Option<BigRational>| r.as_ref().map_or(Value::Null, report::rational);
        json!({
            "t": self.t,
            "n": self.nodes.to_string(),
            "e": self.edges.to_string(),
            "vol": self.volume.to_string(),
            "avg_degree": report::rational(&self.average_degree),
            "wiener": self.wiener.as_ref().map_or(Value::Null, report::big),
            "avg_distance_unordered": opt_rat(&self.average_distance_unordered),
            "avg_distance_ordered": opt_rat(&self.average_distance_ordered),
            "avg_distance_estimate": self.average_distance_estimate.map_or(Value::Null, report::sig12),
            "diameter": self.diameter,
            "clustering": report::rational(&self.clustering),
            "clustering_f64": report::sig12(report::rational_f64(&self.clustering)),
        })
    }
}

/// Metrics over a whole sequence `G_0..G_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub seed: String,
    pub rows: Vec<MetricsRow>,
    pub ultimate: Option<UltimateDistance>,
    /// Fitted over every row with at least one edge; `None` below three rows.
    pub densification: Option<f64>,
}

pub const CSV_HEADER: &str = "t,n,e,vol,avg_deg,W,L_unordered,L_paper,diam,C,a_fit";

impl MetricsReport {
    pub fn compute(seed: &str, seq: &[Graph], opts: &MetricsOptions) -> Result<Self> {
        let rows = seq
            .iter()
            .enumerate()
            .map(|(t, g)| MetricsRow::compute(g, t, opts))
            .collect::<Result<Vec<_>>>()?;
        let ultimate = rows.first().and_then(|r0| {
            r0.wiener
                .as_ref()
                .map(|w| ultimate_average_distance(&SeedStats::new(w.clone(), r0.edges, r0.nodes)))
        });
        let sizes: Vec<(u64, u64)> = rows
            .iter()
            .filter(|r| r.edges > 0)
            .map(|r| (r.nodes, r.edges))
            .collect();
        Ok(MetricsReport {
            seed: seed.to_string(),
            rows,
            ultimate,
            densification: densification_exponent(&sizes).ok(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed_graph": self.seed,
            "rows": self.rows.iter().map(MetricsRow::to_json).collect::<Vec<_>>(),
            "ultimate_avg_distance": self.ultimate.as_ref().map_or(Value::Null, |u| json!({
                "value": report::rational(&u.value),
                "at_most_initial": u.at_most_initial,
            })),
            "densification_exponent": self.densification.map_or(Value::Null, report::sig12),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{CSV_HEADER}");
        let rat = |r: &Option<BigRational>| report::csv_f64(r.as_ref().map(report::rational_f64));
        for r in &self.rows {
            let l_unordered = rat(&r.average_distance_unordered);
            let l_paper = match &r.average_distance_ordered {
                Some(_) => rat(&r.average_distance_ordered),
                None => report::csv_f64(r.average_distance_estimate),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.t,
                r.nodes,
                r.edges,
                r.volume,
                report::csv_f64(Some(report::rational_f64(&r.average_degree))),
                r.wiener.as_ref().map_or(String::new(), |w| w.to_string()),
                l_unordered,
                l_paper,
                r.diameter.map_or(String::new(), |d| d.to_string()),
                report::csv_f64(Some(report::rational_f64(&r.clustering))),
                report::csv_f64(self.densification),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{ilt_sequence, GrowthBudget};
    use crate::seeds;

    #[test]
    fn densification_of_exact_power_law() {
        let sizes: Vec<(u64, u64)> = (1..6).map(|k| (1u64 << k, 1u64 << (2 * k))).collect();
        assert!((densification_exponent(&sizes).unwrap() - 2.0).abs() < 1e-12);
        assert!(densification_exponent(&sizes[..2]).is_err());
    }

    #[test]
    fn report_on_c4() {
        let seq = ilt_sequence(&seeds::cycle(4), 3, &GrowthBudget::default()).unwrap();
        let report = MetricsReport::compute("c4", &seq, &MetricsOptions::default()).unwrap();
        assert_eq!(report.rows[1].wiener, Some(BigUint::from(40u32)));
        assert_eq!(report.rows[1].diameter, Some(2));
        let csv = report.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 5);
        let json = report.to_json();
        assert_eq!(json["rows"][1]["wiener"], json!("40"));
        assert_eq!(json["rows"][0]["avg_degree"], json!({"num": "2", "den": "1"}));
    }

    #[test]
    fn estimate_replaces_exact_beyond_cap() {
        let g = seeds::cycle(12);
        let opts = MetricsOptions {
            max_exact_nodes: 8,
            ..Default::default()
        };
        let row = MetricsRow::compute(&g, 0, &opts).unwrap();
        assert!(row.wiener.is_none() && row.diameter.is_none());
        assert!(row.average_distance_estimate.is_some());
    }
}
