//! Verification harness: each check regenerates graphs, compares a closed
//! form or structural claim against direct measurement, and records the
//! outcome as a report entry.

mod checks;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generator::{ilt_step, GrowthBudget};
use crate::graph::Graph;
use crate::seeds;

pub use checks::CHECKS;

/// Fault injection for testing the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    /// After every step, join the first two clones of that step.
    AddEdge,
}

impl std::str::FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add-edge" => Ok(Perturbation::AddEdge),
            other => Err(Error::invalid(format!("unknown perturbation `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A budget prevented the check from running.
    Skipped(String),
    /// Infrastructure failure unrelated to the claim under test.
    Error(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIP",
            Status::Error(_) => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub id: &'static str,
    /// Acceptance criterion this entry contributes to, if any.
    pub criterion: Option<u8>,
    pub scope: String,
    pub predicted: String,
    pub observed: String,
    pub tolerance: String,
    pub status: Status,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A named initial graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub name: String,
    pub graph: Graph,
}

impl Seed {
    pub fn named(name: &str) -> Result<Self> {
        Ok(Seed {
            name: name.to_string(),
            graph: seeds::named(name)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Replaces the default seed graphs of seed-driven checks.
    pub seeds: Option<Vec<Seed>>,
    /// Replaces the default step range upper bound.
    pub t_max: Option<usize>,
    /// Check ids or criterion numbers to run; empty runs everything.
    pub only: Vec<String>,
    pub perturb: Option<Perturbation>,
    pub rng_seed: u64,
    pub budget: GrowthBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seeds: None,
            t_max: None,
            only: Vec::new(),
            perturb: None,
            rng_seed: 20090,
            budget: GrowthBudget::default(),
        }
    }
}

impl VerifyOptions {
    fn selects(&self, id: &str, criterion: Option<u8>) -> bool {
        self.only.is_empty()
            || self.only.iter().any(|f| {
                f == id || criterion.is_some_and(|c| f.parse::<u8>().ok() == Some(c))
            })
    }

    pub(crate) fn seeds_or(&self, defaults: &[&str]) -> Result<Vec<Seed>> {
        match &self.seeds {
            Some(s) => Ok(s.clone()),
            None => defaults.iter().map(|n| Seed::named(n)).collect(),
        }
    }

    pub(crate) fn t_or(&self, default: usize) -> usize {
        self.t_max.unwrap_or(default)
    }

    /// `[G_0, ..., G_t]`, perturbed when fault injection is on.
    pub(crate) fn sequence(&self, g0: &Graph, t: usize) -> Result<Vec<Graph>> {
        self.budget.check(g0.node_count(), g0.edge_count(), t)?;
        let mut seq = vec![g0.clone()];
        for _ in 0..t {
            let prev = seq.last().expect("non-empty");
            let n = prev.node_count();
            let mut next = ilt_step(prev);
            if self.perturb == Some(Perturbation::AddEdge) && n >= 2 && !next.has_edge(n, n + 1) {
                next = next.with_edge(n, n + 1)?;
            }
            seq.push(next);
        }
        Ok(seq)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.status, Status::Pass | Status::Skipped(_)))
    }

    pub fn any_failed(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e.status, Status::Fail | Status::Error(_)))
    }

    pub fn any_skipped(&self) -> bool {
        self.entries.iter().any(|e| matches!(e.status, Status::Skipped(_)))
    }

    /// Entries belonging to acceptance criterion `c`.
    pub fn criterion(&self, c: u8) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(move |e| e.criterion == Some(c))
    }

    /// True when criterion `c` has entries and all of them pass.
    pub fn criterion_passed(&self, c: u8) -> bool {
        let mut any = false;
        for e in self.criterion(c) {
            any = true;
            if !e.passed() {
                return false;
            }
        }
        any
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.all_passed(),
            "entries": self.entries.iter().map(|e| {
                let mut v = json!({
                    "id": e.id,
                    "criterion": e.criterion,
                    "scope": e.scope,
                    "predicted": e.predicted,
                    "observed": e.observed,
                    "tolerance": e.tolerance,
                    "status": e.status.label(),
                });
                if let Status::Skipped(why) | Status::Error(why) = &e.status {
                    v["reason"] = json!(why);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }

    /// Human-readable table, one line per entry.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let crit = e.criterion.map_or("-".to_string(), |c| c.to_string());
            let _ = write!(
                out,
                "{:<5} [{crit:>2}] {:<30} {:<28} predicted {} | observed {} | tol {}",
                e.status.label(),
                e.id,
                e.scope,
                e.predicted,
                e.observed,
                e.tolerance
            );
            if let Status::Skipped(why) | Status::Error(why) = &e.status {
                let _ = write!(out, " ({why})");
            }
            out.push('\n');
        }
        out
    }
}

/// Runs every selected check, in parallel, and sorts entries by criterion
/// then id.
pub fn run(opts: &VerifyOptions) -> VerificationReport {
    let mut entries: Vec<CheckEntry> = CHECKS
        .par_iter()
        .filter(|c| opts.selects(c.id, c.criterion))
        .flat_map_iter(|c| match (c.run)(opts) {
            Ok(entries) => entries,
            Err(e) => vec![CheckEntry {
                id: c.id,
                criterion: c.criterion,
                scope: "all".into(),
                predicted: String::new(),
                observed: String::new(),
                tolerance: String::new(),
                status: if e.is_budget() {
                    Status::Skipped(e.to_string())
                } else {
                    Status::Error(e.to_string())
                },
            }],
        })
        .collect();
    entries.sort_by(|a, b| {
        (a.criterion.unwrap_or(u8::MAX), a.id).cmp(&(b.criterion.unwrap_or(u8::MAX), b.id))
    });
    VerificationReport { entries }
}

/// Ids of every registered check.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbation_adds_one_edge_per_step() {
        let opts = VerifyOptions {
            perturb: Some(Perturbation::AddEdge),
            ..Default::default()
        };
        let seq = opts.sequence(&seeds::cycle(4), 2).unwrap();
        assert_eq!(seq[1].edge_count(), 17);
        assert!(seq[1].has_edge(4, 5));
        let clean = VerifyOptions::default().sequence(&seeds::cycle(4), 2).unwrap();
        assert_eq!(clean[1].edge_count(), 16);
    }

    #[test]
    fn filter_by_id_and_criterion() {
        let opts = VerifyOptions {
            only: vec!["7".into(), "diameter".into()],
            ..Default::default()
        };
        assert!(opts.selects("adjacency-recurrence", Some(7)));
        assert!(opts.selects("diameter", Some(3)));
        assert!(!opts.selects("spectral-gap", Some(5)));
    }

    #[test]
    fn check_ids_are_unique() {
        let mut ids = check_ids();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn unknown_perturbation_rejected() {
        assert!("drop-edge".parse::<Perturbation>().is_err());
    }
}
