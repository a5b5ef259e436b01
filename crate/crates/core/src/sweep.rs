//! Batch experiments: ILT(p) volume sweeps and the log-log plots.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::Result;
use crate::fit::linear_fit;
use crate::generator::{GrowthBudget, IltPConfig, IltPProcess};
use crate::graph::Graph;
use crate::metrics::DegreeHistogram;
use crate::report;
use crate::svg::{LogLogPlot, Mark};

/// Final size of one ILT(p) run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IltPRun {
    pub rng_seed: u64,
    pub nodes: u64,
    pub edges: u64,
    pub volume: u64,
    /// `vol(H_T) / (3 + delta)^T`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IltPSweep {
    pub delta: f64,
    pub steps: usize,
    pub runs: Vec<IltPRun>,
}

pub const ILTP_CSV_HEADER: &str = "seed_index,rng_seed,T,n,e,vol,vol_ratio";

impl IltPSweep {
    /// Runs `seeds_count` independent processes with RNG seeds
    /// `rng_seed, rng_seed + 1, ...`.
    pub fn run(
        h0: &Graph,
        delta: f64,
        steps: usize,
        rng_seed: u64,
        seeds_count: usize,
        budget: GrowthBudget,
    ) -> Result<Self> {
        let scale = (3.0 + delta).powi(steps as i32);
        let runs = (0..seeds_count as u64)
            .into_par_iter()
            .map(|i| {
                let seed = rng_seed.wrapping_add(i);
                let h = IltPProcess::new(h0.clone(), IltPConfig::new(delta, seed, steps)?)?
                    .with_budget(budget)
                    .run(|_, _| {})?;
                Ok(IltPRun {
                    rng_seed: seed,
                    nodes: h.node_count() as u64,
                    edges: h.edge_count() as u64,
                    volume: h.volume() as u64,
                    ratio: h.volume() as f64 / scale,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IltPSweep { delta, steps, runs })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{ILTP_CSV_HEADER}");
        for (i, r) in self.runs.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{},{},{},{},{},{}",
                r.rng_seed,
                self.steps,
                r.nodes,
                r.edges,
                r.volume,
                report::csv_f64(Some(r.ratio))
            );
        }
        out
    }
}

/// Scatter of `(n_t, e_t)` for every `t` with the least-squares power law
/// fitted over `t >= fit_from`, where lower-order terms have faded. Returns
/// the plot and the fitted exponent.
pub fn densification_plot(sizes: &[(u64, u64)], fit_from: usize) -> Result<(LogLogPlot, f64)> {
    let tail: Vec<(f64, f64)> = sizes
        .iter()
        .skip(fit_from)
        .filter(|&&(n, e)| n > 0 && e > 0)
        .map(|&(n, e)| ((n as f64).ln(), (e as f64).ln()))
        .collect();
    let xs: Vec<f64> = tail.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.1).collect();
    let fit = linear_fit(&xs, &ys)?;
    let points: Vec<(f64, f64)> = sizes
        .iter()
        .filter(|&&(n, e)| n > 0 && e > 0)
        .map(|&(n, e)| (n as f64, e as f64))
        .collect();
    let line = [xs[0].exp(), xs[xs.len() - 1].exp()]
        .iter()
        .map(|&n| (n, (fit.intercept + fit.slope * n.ln()).exp()))
        .collect();
    let plot = LogLogPlot::new("Densification", "nodes n_t", "edges e_t")
        .series("graphs", Mark::Scatter, "black", points)
        .series("least-squares fit", Mark::Line, "crimson", line)
        .annotate(format!("slope {:.4} over t >= {fit_from}", fit.slope));
    Ok((plot, fit.slope))
}

/// Octave-binned degree density with the axis spanning the full degree range.
pub fn degree_distribution_plot(hist: &DegreeHistogram, title: &str) -> LogLogPlot {
    let density = hist.octave_density();
    let lo = hist.iter().map(|(d, _)| d).find(|&d| d > 0).unwrap_or(1);
    let hi = hist.iter().map(|(d, _)| d).last().unwrap_or(1).max(1);
    LogLogPlot::new(title, "degree", "nodes per unit degree")
        .series("octave bins", Mark::Line, "steelblue", density.clone())
        .series("", Mark::Scatter, "steelblue", density)
        .cover_x(lo as f64, hi as f64)
}
