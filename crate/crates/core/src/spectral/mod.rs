//! Normalized Laplacian and adjacency spectra of ILT graphs.

mod jacobi;

pub use jacobi::{
    symmetric_eigen, symmetric_eigenvalues, EigenOptions, SymMatrix, SymmetricSpectrum,
    DEFAULT_DENSE_NODES,
};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generator::{gnp, ilt_sequence, ilt_step, GrowthBudget, IltPConfig, IltPProcess};
use crate::graph::Graph;
use crate::report;

/// `I − D^{-1/2} A D^{-1/2}`.
pub fn normalized_laplacian(g: &Graph) -> Result<SymMatrix> {
    let n = g.node_count();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedNode(v));
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut m = SymMatrix::identity(n);
    for (u, v) in g.edges() {
        let x = -inv_sqrt[u] * inv_sqrt[v];
        m.set(u, v, x);
        m.set(v, u, x);
    }
    Ok(m)
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.node_count());
    for (u, v) in g.edges() {
        m.set(u, v, 1.0);
        m.set(v, u, 1.0);
    }
    m
}

pub fn laplacian_spectrum(g: &Graph) -> Result<SymmetricSpectrum> {
    symmetric_eigenvalues(&normalized_laplacian(g)?)
}

pub fn adjacency_spectrum(g: &Graph) -> Result<SymmetricSpectrum> {
    symmetric_eigenvalues(&adjacency_matrix(g))
}

/// `(ρ0, |ρ1|)`: the Perron value and the next largest magnitude.
pub fn perron_pair(ascending: &[f64]) -> Option<(f64, f64)> {
    let (&rho0, rest) = ascending.split_last()?;
    let rho1 = rest.iter().map(|x| x.abs()).fold(None, |m: Option<f64>, x| {
        Some(m.map_or(x, |m| m.max(x)))
    })?;
    Some((rho0, rho1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub lambda1: f64,
    pub lambda_max: f64,
    /// `max(|λ1 − 1|, |λ_{n−1} − 1|)`.
    pub lambda_gap: f64,
    pub rho0: f64,
    pub rho1_abs: f64,
    pub adjacency_ratio: f64,
    pub laplacian: Vec<f64>,
    pub adjacency: Vec<f64>,
    pub residual: f64,
}

pub fn spectral_gap(g: &Graph) -> Result<GapReport> {
    if g.node_count() < 2 {
        return Err(Error::invalid("spectral gap needs at least two nodes"));
    }
    let lap = laplacian_spectrum(g)?;
    let adj = adjacency_spectrum(g)?;
    let lambda1 = lap.values[1];
    let lambda_max = *lap.values.last().expect("n >= 2");
    let (rho0, rho1_abs) = perron_pair(&adj.values).expect("n >= 2");
    Ok(GapReport {
        lambda1,
        lambda_max,
        lambda_gap: (lambda1 - 1.0).abs().max((lambda_max - 1.0).abs()),
        rho0,
        rho1_abs,
        adjacency_ratio: rho0 / rho1_abs,
        laplacian: lap.values,
        adjacency: adj.values,
        residual: lap.residual.max(adj.residual),
    })
}

/// `λ1(G_t)` for `t = 0..=t_max`.
pub fn lambda1_sequence(g0: &Graph, t_max: usize, budget: &GrowthBudget) -> Result<Vec<f64>> {
    if g0.node_count() < 2 {
        return Err(Error::invalid(
            "a seed with one node has no second eigenvalue; start from at least two nodes",
        ));
    }
    let seq = ilt_sequence(g0, t_max, budget)?;
    seq.par_iter()
        .map(|g| Ok(laplacian_spectrum(g)?.values[1]))
        .collect()
}

/// Roots of `x² − ρx − (ρ+1)²`, larger first.
pub fn adjacency_children(rho: f64) -> (f64, f64) {
    let disc = (rho * rho + 4.0 * (rho + 1.0) * (rho + 1.0)).sqrt();
    ((rho + disc) / 2.0, (rho - disc) / 2.0)
}

/// Sorted children of every eigenvalue in `values`.
pub fn predicted_child_spectrum(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = values
        .iter()
        .flat_map(|&r| {
            let (a, b) = adjacency_children(r);
            [a, b]
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceCheck {
    pub holds: bool,
    pub max_deviation: f64,
}

pub const RECURRENCE_TOL: f64 = 1e-7;

/// Compares the children of `spec A(g)` with `spec A(ILT(g))`.
pub fn verify_adjacency_recurrence(g: &Graph) -> Result<RecurrenceCheck> {
    let parent = adjacency_spectrum(g)?;
    let child = adjacency_spectrum(&ilt_step(g))?;
    let predicted = predicted_child_spectrum(&parent.values);
    let max_deviation = predicted
        .iter()
        .zip(&child.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(RecurrenceCheck {
        holds: max_deviation <= RECURRENCE_TOL,
        max_deviation,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioTrend {
    /// `(t, ρ0/|ρ1|)`.
    pub ratios: Vec<(usize, f64)>,
    pub sup: f64,
    pub inf: f64,
}

pub fn adjacency_ratio_trend(g0: &Graph, t_max: usize, budget: &GrowthBudget) -> Result<RatioTrend> {
    let seq = ilt_sequence(g0, t_max, budget)?;
    let ratios: Vec<(usize, f64)> = seq
        .par_iter()
        .enumerate()
        .map(|(t, g)| {
            let s = adjacency_spectrum(g)?;
            let (r0, r1) = perron_pair(&s.values)
                .ok_or_else(|| Error::invalid("adjacency ratio needs two nodes"))?;
            Ok((t, r0 / r1))
        })
        .collect::<Result<_>>()?;
    let sup = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let inf = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    Ok(RatioTrend { ratios, sup, inf })
}

/// Mean `ρ0/|ρ1|` of G(n, p) graphs matching the order and average degree of `g`.
pub fn gnp_matched_ratio(g: &Graph, rng_seeds: &[u64]) -> Result<f64> {
    let n = g.node_count();
    if n < 2 || rng_seeds.is_empty() {
        return Err(Error::invalid("matched G(n,p) needs two nodes and one seed"));
    }
    let p = g.volume() as f64 / (n as f64 * (n - 1) as f64);
    let ratios: Vec<f64> = rng_seeds
        .par_iter()
        .map(|&s| {
            let h = gnp(n, p, s)?;
            let spec = adjacency_spectrum(&h)?;
            let (r0, r1) = perron_pair(&spec.values).expect("n >= 2");
            Ok(r0 / r1)
        })
        .collect::<Result<_>>()?;
    Ok(ratios.iter().sum::<f64>() / ratios.len() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IltPGap {
    pub gap: f64,
    /// `(2 − δ − δ²) / (2(1 + δ))`.
    pub analytic_floor: f64,
}

/// Gap of `H_t` sampled under `config`.
pub fn iltp_gap(h0: &Graph, config: IltPConfig, t: usize) -> Result<IltPGap> {
    let mut process = IltPProcess::new(h0.clone(), config)?;
    for _ in 0..t {
        process.advance()?;
    }
    Ok(IltPGap {
        gap: spectral_gap(process.current())?.lambda_gap,
        analytic_floor: config.gap_floor(),
    })
}

/// Spectral summary of `G_0..G_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub seed: String,
    pub rows: Vec<(usize, GapReport)>,
}

pub const CSV_HEADER: &str = "t,lambda1,lambda_max,gap,rho0,rho1_abs,ratio";

impl SpectrumReport {
    /// Rows for every `t` whose graph has at least two nodes.
    pub fn compute(seed: &str, seq: &[Graph]) -> Result<Self> {
        let rows = seq
            .par_iter()
            .enumerate()
            .filter(|(_, g)| g.node_count() >= 2)
            .map(|(t, g)| Ok((t, spectral_gap(g)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumReport {
            seed: seed.to_string(),
            rows,
        })
    }

    pub fn to_json(&self) -> Value {
        let arr = |v: &[f64]| v.iter().map(|&x| report::sig12(x)).collect::<Vec<_>>();
        json!({
            "seed_graph": self.seed,
            "rows": self.rows.iter().map(|(t, r)| json!({
                "t": t,
                "laplacian": arr(&r.laplacian),
                "adjacency": arr(&r.adjacency),
                "lambda1": report::sig12(r.lambda1),
                "lambda_max": report::sig12(r.lambda_max),
                "gap": report::sig12(r.lambda_gap),
                "rho0": report::sig12(r.rho0),
                "rho1_abs": report::sig12(r.rho1_abs),
                "ratio": report::sig12(r.adjacency_ratio),
                "residual": r.residual,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{CSV_HEADER}");
        for (t, r) in &self.rows {
            let f = |x: f64| report::csv_f64(Some(x));
            let _ = writeln!(
                out,
                "{t},{},{},{},{},{},{}",
                f(r.lambda1),
                f(r.lambda_max),
                f(r.lambda_gap),
                f(r.rho0),
                f(r.rho1_abs),
                f(r.adjacency_ratio)
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn small_laplacians() {
        let k2 = normalized_laplacian(&seeds::complete(2)).unwrap();
        assert_eq!(k2, SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap());
        assert!(close(&laplacian_spectrum(&seeds::complete(2)).unwrap().values, &[0.0, 2.0], 1e-12));
        assert!(close(
            &laplacian_spectrum(&seeds::cycle(4)).unwrap().values,
            &[0.0, 1.0, 1.0, 2.0],
            1e-12
        ));
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(normalized_laplacian(&g), Err(Error::IsolatedNode(2))));
    }

    #[test]
    fn kernel_vector_is_sqrt_degrees() {
        let g = ilt_step(&seeds::path(4));
        let opts = EigenOptions {
            vectors: true,
            ..Default::default()
        };
        let s = symmetric_eigen(&normalized_laplacian(&g).unwrap(), &opts).unwrap();
        assert!(s.values[0].abs() < 1e-10);
        let v = &s.vectors.unwrap()[0];
        let d: Vec<f64> = (0..g.node_count()).map(|x| (g.degree(x) as f64).sqrt()).collect();
        let norm_d = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = v.iter().zip(&d).map(|(a, b)| a * b).sum();
        assert!((dot.abs() - norm_d).abs() < 1e-9);
    }

    #[test]
    fn trace_identities() {
        let mut g = seeds::petersen();
        for _ in 0..2 {
            let n = g.node_count() as f64;
            let lap: f64 = laplacian_spectrum(&g).unwrap().values.iter().sum();
            assert!((lap - n).abs() < 1e-8 * n);
            let adj = adjacency_spectrum(&g).unwrap().values;
            assert!(adj.iter().sum::<f64>().abs() < 1e-8 * n);
            let sq: f64 = adj.iter().map(|x| x * x).sum();
            let two_e = 2.0 * g.edge_count() as f64;
            assert!((sq - two_e).abs() < 1e-8 * two_e);
            g = ilt_step(&g);
        }
    }

    #[test]
    fn gap_values_on_c4() {
        assert!((spectral_gap(&seeds::cycle(4)).unwrap().lambda_gap - 1.0).abs() < 1e-12);
        let g1 = ilt_step(&seeds::cycle(4));
        assert!((spectral_gap(&g1).unwrap().lambda_gap - 0.6).abs() < 1e-9);
    }

    #[test]
    fn children_special_values() {
        assert_eq!(adjacency_children(-1.0), (0.0, -1.0));
        assert_eq!(adjacency_children(0.0), (1.0, -1.0));
        let (a, b) = adjacency_children(1.0);
        let r17 = 17f64.sqrt();
        assert!((a - (1.0 + r17) / 2.0).abs() < 1e-15 && (b - (1.0 - r17) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_on_small_seeds() {
        for g in [seeds::complete(1), seeds::complete(2), seeds::cycle(4), seeds::path(5)] {
            let check = verify_adjacency_recurrence(&g).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }

    #[test]
    fn k1_lambda_sequence_rejected() {
        let err = lambda1_sequence(&seeds::complete(1), 3, &GrowthBudget::default()).unwrap_err();
        assert!(err.to_string().contains("second eigenvalue"));
    }

    #[test]
    fn perron_pair_handles_bipartite_tie() {
        assert_eq!(perron_pair(&[-2.0, 0.0, 0.0, 2.0]), Some((2.0, 2.0)));
        assert_eq!(perron_pair(&[1.0]), None);
    }

    #[test]
    fn report_csv_shape() {
        let seq = ilt_sequence(&seeds::complete(1), 3, &GrowthBudget::default()).unwrap();
        let r = SpectrumReport::compute("k1", &seq).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.to_csv().lines().count(), 4);
    }
}
