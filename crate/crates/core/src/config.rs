//! Experiment configuration with `key = value` files.
//!
//! Precedence, lowest first: built-in defaults, `ILT_BUDGET_NODES`, the
//! config file, explicit overrides (command-line flags).

use std::fmt::Write as _;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::generator::GrowthBudget;
use crate::spectral::DEFAULT_DENSE_NODES;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Named seed or path to a graph file.
    pub seed_graph: String,
    pub t_max: usize,
    /// Switches generation to ILT(p) when set.
    pub delta: Option<f64>,
    pub rng_seed: u64,
    pub seeds_count: usize,
    pub budget: GrowthBudget,
    pub dense_nodes: usize,
    pub output_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed_graph: "c4".into(),
            t_max: 3,
            delta: None,
            rng_seed: 20090,
            seeds_count: 1,
            budget: GrowthBudget::default(),
            dense_nodes: DEFAULT_DENSE_NODES,
            output_dir: None,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layer in place.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed_graph: Option<String>,
    pub t_max: Option<usize>,
    pub delta: Option<f64>,
    pub rng_seed: Option<u64>,
    pub seeds_count: Option<usize>,
    pub max_nodes: Option<u64>,
    pub max_edges: Option<u64>,
    pub dense_nodes: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "seed_graph",
    "t_max",
    "delta",
    "rng_seed",
    "seeds_count",
    "max_nodes",
    "max_edges",
    "dense_nodes",
    "output_dir",
];

impl Overrides {
    /// Parses `key = value` lines. `#` starts a comment line; unknown keys
    /// are errors.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: idx + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |what: &str| err(format!("invalid {what} `{value}`"));
            match key {
                "seed_graph" => o.seed_graph = Some(value.to_string()),
                "t_max" | "t" => o.t_max = Some(value.parse().map_err(|_| num("step"))?),
                "delta" => o.delta = Some(value.parse().map_err(|_| num("delta"))?),
                "rng_seed" => o.rng_seed = Some(value.parse().map_err(|_| num("rng seed"))?),
                "seeds_count" | "seeds" => {
                    o.seeds_count = Some(value.parse().map_err(|_| num("seed count"))?)
                }
                "max_nodes" => o.max_nodes = Some(value.parse().map_err(|_| num("node cap"))?),
                "max_edges" => o.max_edges = Some(value.parse().map_err(|_| num("edge cap"))?),
                "dense_nodes" => o.dense_nodes = Some(value.parse().map_err(|_| num("matrix cap"))?),
                "output_dir" => o.output_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(err(format!(
                        "unknown key `{other}` (expected one of {})",
                        KEYS.join(", ")
                    )))
                }
            }
        }
        Ok(o)
    }

    /// `higher` wins wherever it is set.
    pub fn merge(self, higher: Overrides) -> Overrides {
        Overrides {
            seed_graph: higher.seed_graph.or(self.seed_graph),
            t_max: higher.t_max.or(self.t_max),
            delta: higher.delta.or(self.delta),
            rng_seed: higher.rng_seed.or(self.rng_seed),
            seeds_count: higher.seeds_count.or(self.seeds_count),
            max_nodes: higher.max_nodes.or(self.max_nodes),
            max_edges: higher.max_edges.or(self.max_edges),
            dense_nodes: higher.dense_nodes.or(self.dense_nodes),
            output_dir: higher.output_dir.or(self.output_dir),
        }
    }

    fn apply(self, c: &mut ExperimentConfig) {
        macro_rules! take {
            ($($field:ident),*) => {$(if let Some(v) = self.$field { c.$field = v; })*};
        }
        take!(seed_graph, t_max, rng_seed, seeds_count, dense_nodes);
        if self.delta.is_some() {
            c.delta = self.delta;
        }
        if self.output_dir.is_some() {
            c.output_dir = self.output_dir;
        }
        if let Some(n) = self.max_nodes {
            c.budget.max_nodes = n;
        }
        if let Some(m) = self.max_edges {
            c.budget.max_edges = m;
        }
    }
}

impl ExperimentConfig {
    /// Layers the environment, an optional config file and flags over the
    /// defaults, then validates.
    pub fn resolve(file: Option<&str>, flags: Overrides) -> Result<Self> {
        let layered = match file {
            Some(text) => Overrides::parse_file(text)?.merge(flags),
            None => flags,
        };
        Self::from_overrides(layered)
    }

    /// Applies already-merged overrides over the defaults and environment.
    pub fn from_overrides(layered: Overrides) -> Result<Self> {
        let mut c = ExperimentConfig {
            budget: GrowthBudget::from_env()?,
            ..Default::default()
        };
        layered.apply(&mut c);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.delta {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::invalid(format!("delta {d} outside [0, 1]")));
            }
        }
        if self.seeds_count == 0 {
            return Err(Error::invalid("seeds_count must be at least 1"));
        }
        if self.seed_graph.is_empty() {
            return Err(Error::invalid("seed_graph is empty"));
        }
        Ok(())
    }

    /// Every setting that affects output, one `key = value` line each.
    /// `output_dir` is left out so relocated runs hash identically.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed_graph = {}", self.seed_graph);
        let _ = writeln!(out, "t_max = {}", self.t_max);
        if let Some(d) = self.delta {
            let _ = writeln!(out, "delta = {d}");
        }
        let _ = writeln!(out, "rng_seed = {}", self.rng_seed);
        let _ = writeln!(out, "seeds_count = {}", self.seeds_count);
        let _ = writeln!(out, "max_nodes = {}", self.budget.max_nodes);
        let _ = writeln!(out, "max_edges = {}", self.budget.max_edges);
        let _ = writeln!(out, "dense_nodes = {}", self.dense_nodes);
        out
    }

    /// Hex SHA-256 of [`canonical`](Self::canonical).
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// `# ...` comment line stamped at the top of text outputs.
    pub fn header(&self, command: &str) -> String {
        format!("# ilt {command} config-sha256={}\n", self.hash())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = "# sweep setup\nseed_graph = k2\nt_max = 5\nrng_seed = 9\n";
        let c = ExperimentConfig::resolve(
            Some(file),
            Overrides {
                t_max: Some(7),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.seed_graph, "k2");
        assert_eq!(c.t_max, 7);
        assert_eq!(c.rng_seed, 9);
        assert_eq!(c.seeds_count, 1);
    }

    #[test]
    fn invalid_values_rejected() {
        for text in ["delta = 1.5", "seeds_count = 0", "t_max = -1", "colour = red", "t_max 3"] {
            assert!(ExperimentConfig::resolve(Some(text), Overrides::default()).is_err(), "{text}");
        }
    }

    #[test]
    fn hash_ignores_output_dir() {
        let a = ExperimentConfig::default();
        let b = ExperimentConfig {
            output_dir: Some("elsewhere".into()),
            ..Default::default()
        };
        let c = ExperimentConfig {
            t_max: 4,
            ..Default::default()
        };
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
        assert!(a.header("generate").starts_with("# ilt generate config-sha256="));
    }
}
