//! The experiment commands behind the `ilt` binary. Each returns its
//! standard output and the files it wrote; the binary only parses flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Overrides};
use crate::error::{Error, Result};
use crate::games::{GamesOptions, GamesReport};
use crate::generator::{ilt_sequence, lineage_sidecar, GrowthPrediction, IltPConfig, IltPProcess};
use crate::graph::Graph;
use crate::harness::{self, Perturbation, Seed, VerifyOptions};
use crate::metrics::{DegreeHistogram, MetricsOptions, MetricsReport, DEFAULT_HISTOGRAM_ENTRIES};
use crate::seeds;
use crate::spectral::SpectrumReport;
use crate::svg::LogLogPlot;
use crate::sweep::{degree_distribution_plot, densification_plot, IltPSweep};

/// Used by `generate` when no output directory is configured.
pub const DEFAULT_GENERATE_DIR: &str = "ilt-output";

/// Largest edge count a sweep computes full metrics for; later steps get
/// size columns only.
pub const SWEEP_METRIC_EDGES: u64 = 1 << 23;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ChecksFailed,
    /// Some checks were skipped for budget reasons, none failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    /// Progress and summary lines meant for standard error.
    pub notes: Vec<String>,
    pub written: Vec<PathBuf>,
    pub outcome: Outcome,
}

impl CommandOutput {
    fn new(stdout: String) -> Self {
        CommandOutput {
            stdout,
            notes: Vec::new(),
            written: Vec::new(),
            outcome: Outcome::Success,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plot {
    Densification,
    DegreeDist,
}

impl std::str::FromStr for Plot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "densification" => Ok(Plot::Densification),
            "degree-dist" => Ok(Plot::DegreeDist),
            other => Err(Error::invalid(format!(
                "unknown plot `{other}` (expected densification or degree-dist)"
            ))),
        }
    }
}

/// Writes output files stamped with the config hash.
struct Sink<'a> {
    dir: Option<&'a Path>,
    config: &'a ExperimentConfig,
    command: &'static str,
    written: Vec<PathBuf>,
}

impl<'a> Sink<'a> {
    fn new(config: &'a ExperimentConfig, command: &'static str) -> Self {
        Sink {
            dir: config.output_dir.as_deref(),
            config,
            command,
            written: Vec::new(),
        }
    }

    fn with_dir(mut self, dir: &'a Path) -> Self {
        self.dir = Some(dir);
        self
    }

    fn put(&mut self, name: &str, body: &str) -> Result<()> {
        let Some(dir) = self.dir else { return Ok(()) };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        self.written.push(path);
        Ok(())
    }

    /// Text file with a leading `#` header line.
    fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let header = self.config.header(self.command);
        self.put(name, &format!("{header}{body}"))
    }

    fn json(&mut self, name: &str, report: Value) -> Result<()> {
        let doc = stamped_json(self.config, self.command, report)?;
        self.put(name, &doc)
    }

    fn svg(&mut self, name: &str, plot: LogLogPlot) -> Result<()> {
        let plot = plot.comment(format!("ilt {} config-sha256={}", self.command, self.config.hash()));
        self.put(name, &plot.render()?)
    }
}

/// JSON has no comments, so the hash becomes a top-level field.
fn stamped_json(config: &ExperimentConfig, command: &str, report: Value) -> Result<String> {
    let doc = json!({
        "command": command,
        "config_sha256": config.hash(),
        "report": report,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

/// Adds the step to a budget error raised while processing `G_t`.
fn at_step(t: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Budget(msg) if !msg.starts_with("step ") => Error::Budget(format!("step t={t}: {msg}")),
        other => other,
    }
}

fn seed_graph(config: &ExperimentConfig) -> Result<Graph> {
    seeds::resolve(&config.seed_graph)
}

/// `G_0..G_t`, or `H_0..H_T` when `delta` is set.
pub fn sequence(config: &ExperimentConfig) -> Result<Vec<Graph>> {
    let g0 = seed_graph(config)?;
    match config.delta {
        None => ilt_sequence(&g0, config.t_max, &config.budget),
        Some(delta) => {
            let iltp = IltPConfig::new(delta, config.rng_seed, config.t_max)?;
            let mut seq = Vec::with_capacity(config.t_max + 1);
            IltPProcess::new(g0, iltp)?
                .with_budget(config.budget)
                .run(|_, h| seq.push(h.clone()))?;
            Ok(seq)
        }
    }
}

pub fn generate(config: &ExperimentConfig) -> Result<CommandOutput> {
    let seq = sequence(config)?;
    let n0 = seq[0].node_count();
    let dir = config
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_GENERATE_DIR));
    let mut sink = Sink::new(config, "generate").with_dir(&dir);
    let prefix = if config.delta.is_some() { "h" } else { "g" };
    let mut stdout = String::from("t,n,e,file\n");
    for (t, g) in seq.iter().enumerate() {
        let name = format!("{prefix}{t}.txt");
        sink.text(&name, &g.to_text())?;
        sink.text(&format!("{prefix}{t}.lineage"), &lineage_sidecar(t, n0))?;
        let _ = writeln!(stdout, "{t},{},{},{}", g.node_count(), g.edge_count(), dir.join(&name).display());
    }
    let mut out = CommandOutput::new(stdout);
    out.written = sink.written;
    Ok(out)
}

pub fn metrics(config: &ExperimentConfig) -> Result<CommandOutput> {
    let seq = sequence(config)?;
    let report = MetricsReport::compute(&config.seed_graph, &seq, &MetricsOptions::default())?;
    let csv = report.to_csv();
    let mut sink = Sink::new(config, "metrics");
    sink.text("metrics.csv", &csv)?;
    sink.json("metrics.json", report.to_json())?;
    let mut out = CommandOutput::new(csv);
    out.written = sink.written;
    Ok(out)
}

pub fn spectral(config: &ExperimentConfig) -> Result<CommandOutput> {
    let g0 = seed_graph(config)?;
    for t in 0..=config.t_max {
        let n = g0.node_count() << t;
        if n > config.dense_nodes {
            return Err(Error::Budget(format!(
                "step t={t}: {n} nodes exceed the dense matrix cap of {}",
                config.dense_nodes
            )));
        }
    }
    let seq = sequence(config)?;
    let report = SpectrumReport::compute(&config.seed_graph, &seq)?;
    let csv = report.to_csv();
    let mut sink = Sink::new(config, "spectral");
    sink.text("spectral.csv", &csv)?;
    sink.json("spectral.json", report.to_json())?;
    let mut out = CommandOutput::new(csv);
    out.written = sink.written;
    Ok(out)
}

pub fn games(config: &ExperimentConfig, opts: &GamesOptions) -> Result<CommandOutput> {
    let seq = sequence(config)?;
    let reports = seq
        .iter()
        .enumerate()
        .map(|(t, g)| GamesReport::compute(g, t, opts).map_err(at_step(t)))
        .collect::<Result<Vec<_>>>()?;
    let mut stdout = String::from("t,n,domination_number,cop_number,cop_win,automorphisms\n");
    for (r, g) in reports.iter().zip(&seq) {
        let cops = r.cops.number.map_or(format!(">{}", opts.k_max), |c| c.to_string());
        let _ = writeln!(
            stdout,
            "{},{},{},{cops},{},{}",
            r.t,
            g.node_count(),
            r.domination.number,
            r.cop_win,
            r.group_order
        );
    }
    let mut sink = Sink::new(config, "games");
    sink.text("games.csv", &stdout)?;
    sink.json(
        "games.json",
        json!({
            "seed_graph": config.seed_graph,
            "rows": reports.iter().map(GamesReport::to_json).collect::<Vec<_>>(),
        }),
    )?;
    let mut out = CommandOutput::new(stdout);
    out.written = sink.written;
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyRequest {
    pub only: Vec<String>,
    pub perturb: Option<Perturbation>,
    pub json: bool,
}

/// Runs the harness. Only settings given explicitly (in `layered`) replace
/// the per-check default seeds and step ranges.
pub fn verify(config: &ExperimentConfig, layered: &Overrides, req: &VerifyRequest) -> Result<CommandOutput> {
    let known = harness::check_ids();
    for f in &req.only {
        if f.parse::<u8>().is_err() && !known.contains(&f.as_str()) {
            return Err(Error::invalid(format!(
                "unknown check `{f}` (expected a criterion number or one of {})",
                known.join(", ")
            )));
        }
    }
    let seeds = match &layered.seed_graph {
        Some(name) => Some(vec![Seed {
            name: name.clone(),
            graph: seeds::resolve(name)?,
        }]),
        None => None,
    };
    let opts = VerifyOptions {
        seeds,
        t_max: layered.t_max,
        only: req.only.clone(),
        perturb: req.perturb,
        rng_seed: config.rng_seed,
        budget: config.budget,
    };
    let report = harness::run(&opts);
    let table = report.to_table();
    let mut sink = Sink::new(config, "verify");
    sink.text("verify.txt", &table)?;
    sink.json("verify.json", report.to_json())?;
    let stdout = if req.json {
        stamped_json(config, "verify", report.to_json())?
    } else {
        table
    };
    let mut out = CommandOutput::new(stdout);
    let count = |label: &str| {
        report
            .entries
            .iter()
            .filter(|e| e.status.label() == label)
            .count()
    };
    out.notes.push(format!(
        "{} entries: {} pass, {} fail, {} skipped, {} error",
        report.entries.len(),
        count("PASS"),
        count("FAIL"),
        count("SKIP"),
        count("ERROR")
    ));
    out.outcome = if report.any_failed() {
        Outcome::ChecksFailed
    } else if report.any_skipped() {
        Outcome::Skipped
    } else {
        Outcome::Success
    };
    out.written = sink.written;
    Ok(out)
}

pub fn sweep(config: &ExperimentConfig, plots: &[Plot]) -> Result<CommandOutput> {
    let g0 = seed_graph(config)?;
    if let Some(delta) = config.delta {
        if !plots.is_empty() {
            return Err(Error::invalid("plots are available for the deterministic process only"));
        }
        let s = IltPSweep::run(&g0, delta, config.t_max, config.rng_seed, config.seeds_count, config.budget)?;
        let csv = s.to_csv();
        let mut sink = Sink::new(config, "sweep");
        sink.text("iltp_sweep.csv", &csv)?;
        let mut out = CommandOutput::new(csv);
        out.written = sink.written;
        return Ok(out);
    }

    let t_max = config.t_max;
    let predictions: Vec<GrowthPrediction> = (0..=t_max).map(|t| GrowthPrediction::for_graph(&g0, t)).collect();
    let sizes: Vec<(u64, u64)> = predictions
        .iter()
        .map(|p| (u64::try_from(&p.n_t).unwrap_or(u64::MAX), u64::try_from(&p.e_t).unwrap_or(u64::MAX)))
        .collect();
    // full metrics while the graph stays small, size columns beyond
    let measured = sizes
        .iter()
        .take_while(|&&(n, e)| e <= SWEEP_METRIC_EDGES && n <= config.budget.max_nodes)
        .count();
    let seq = ilt_sequence(&g0, measured.saturating_sub(1), &config.budget)?;
    let mut report = MetricsReport::compute(&config.seed_graph, &seq, &MetricsOptions::default())?;
    let fit_from = t_max / 2;
    let fitted = densification_plot(&sizes, fit_from).ok();
    if let Some((_, slope)) = &fitted {
        report.densification = Some(*slope);
    }
    let mut csv = report.to_csv();
    let a_fit = crate::report::csv_f64(report.densification);
    for p in &predictions[measured..] {
        let avg = crate::generator::predicted_average_degree(g0.node_count(), g0.volume(), p.t);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},,,,,,{a_fit}",
            p.t,
            p.n_t,
            p.e_t,
            p.vol_t,
            crate::report::csv_f64(Some(crate::report::rational_f64(&avg)))
        );
    }
    let mut sink = Sink::new(config, "sweep");
    sink.text("sweep.csv", &csv)?;
    let mut out = CommandOutput::new(csv);
    if measured <= t_max {
        out.notes.push(format!(
            "steps t >= {measured} exceed {SWEEP_METRIC_EDGES} edges; their rows carry sizes only"
        ));
    }
    for plot in plots {
        match plot {
            Plot::Densification => {
                let (svg, slope) = fitted
                    .clone()
                    .ok_or_else(|| Error::invalid("densification fit needs at least two non-empty steps past t_max/2"))?;
                out.notes.push(format!("densification slope {slope:.4} (fit over t >= {fit_from})"));
                sink.svg("densification.svg", svg)?;
            }
            Plot::DegreeDist => {
                let hist = DegreeHistogram::predicted(&g0, t_max, DEFAULT_HISTOGRAM_ENTRIES)?;
                let title = format!("Degree distribution, {} t={t_max}", config.seed_graph);
                sink.svg("degree_dist.svg", degree_distribution_plot(&hist, &title))?;
            }
        }
    }
    out.written = sink.written;
    Ok(out)
}

pub fn degree_dist(config: &ExperimentConfig, plot: bool) -> Result<CommandOutput> {
    let g0 = seed_graph(config)?;
    let hist = DegreeHistogram::predicted(&g0, config.t_max, DEFAULT_HISTOGRAM_ENTRIES)?;
    let mut csv = String::from("degree,count\n");
    for (d, c) in hist.iter() {
        let _ = writeln!(csv, "{d},{c}");
    }
    let mut sink = Sink::new(config, "degree-dist");
    sink.text("degree_dist.csv", &csv)?;
    if plot {
        let title = format!("Degree distribution, {} t={}", config.seed_graph, config.t_max);
        sink.svg("degree_dist.svg", degree_distribution_plot(&hist, &title))?;
    }
    let n = hist.total();
    let k = (n as f64).sqrt().floor() as u64;
    let mut out = CommandOutput::new(csv);
    out.notes.push(format!(
        "{n} nodes, {} distinct degrees, N(>={k})/n = {:.4}",
        hist.counts.len(),
        hist.count_at_least(k) as f64 / n as f64
    ));
    out.written = sink.written;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(dir: Option<&Path>, f: impl FnOnce(&mut Overrides)) -> ExperimentConfig {
        let mut o = Overrides {
            output_dir: dir.map(Path::to_path_buf),
            ..Default::default()
        };
        f(&mut o);
        ExperimentConfig::from_overrides(o).unwrap()
    }

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("ilt-commands-{name}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn generate_writes_each_step() {
        let dir = scratch("generate");
        let cfg = config(Some(&dir), |o| {
            o.seed_graph = Some("c4".into());
            o.t_max = Some(3);
        });
        let out = generate(&cfg).unwrap();
        assert_eq!(out.written.len(), 8);
        for (t, n) in [(0, 4), (1, 8), (2, 16), (3, 32)] {
            let text = std::fs::read_to_string(dir.join(format!("g{t}.txt"))).unwrap();
            assert!(text.starts_with("# ilt generate config-sha256="));
            assert_eq!(Graph::parse_text(&text).unwrap().node_count(), n);
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn spectral_refuses_large_matrices() {
        let cfg = config(None, |o| {
            o.seed_graph = Some("c4".into());
            o.t_max = Some(4);
            o.dense_nodes = Some(32);
        });
        let err = spectral(&cfg).unwrap_err();
        assert!(err.is_budget());
        assert!(err.to_string().contains("t=4"));
    }

    #[test]
    fn sweep_rows_past_metric_cap_keep_sizes() {
        let cfg = config(None, |o| {
            o.seed_graph = Some("k1".into());
            o.t_max = Some(16);
        });
        let out = sweep(&cfg, &[]).unwrap();
        let last = out.stdout.lines().last().unwrap();
        assert!(last.starts_with(&format!("16,65536,{},", 3u64.pow(16) - 65536)));
        assert_eq!(out.notes.len(), 1);
    }

    #[test]
    fn unknown_check_is_usage_error() {
        let cfg = config(None, |_| {});
        let req = VerifyRequest {
            only: vec!["nonexistent".into()],
            ..Default::default()
        };
        assert!(matches!(verify(&cfg, &Overrides::default(), &req), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn plot_names() {
        assert_eq!("degree-dist".parse::<Plot>().unwrap(), Plot::DegreeDist);
        assert!("histogram".parse::<Plot>().is_err());
    }
}
