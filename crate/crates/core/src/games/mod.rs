//! Domination, cops and robber, and automorphism groups of small graphs.

mod cops;
mod domination;
mod symmetry;

pub use cops::{cop_number, is_cop_win, CopGame, CopNumber, DEFAULT_STATE_BUDGET};
pub use domination::{domination_number, Domination, DEFAULT_EXACT_NODES};
pub use symmetry::{
    automorphisms, extend_automorphism, lift_by_lineage, verify_embedding, EmbeddingReport,
    Permutation, DEFAULT_GROUP_BUDGET,
};

use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GamesOptions {
    pub max_nodes: usize,
    pub k_max: usize,
    pub state_budget: u64,
    pub group_budget: usize,
}

impl Default for GamesOptions {
    fn default() -> Self {
        GamesOptions {
            max_nodes: DEFAULT_EXACT_NODES,
            k_max: 3,
            state_budget: DEFAULT_STATE_BUDGET,
            group_budget: DEFAULT_GROUP_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GamesReport {
    pub t: usize,
    pub domination: Domination,
    pub cops: CopNumber,
    pub cop_win: bool,
    pub group_order: usize,
}

impl GamesReport {
    pub fn compute(g: &Graph, t: usize, opts: &GamesOptions) -> Result<Self> {
        Ok(GamesReport {
            t,
            domination: domination_number(g, opts.max_nodes)?,
            cops: cop_number(g, opts.k_max, opts.state_budget)?,
            cop_win: is_cop_win(g),
            group_order: automorphisms(g, opts.group_budget)?.len(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "domination_number": self.domination.number,
            "dominating_set": self.domination.set,
            "cop_number": self.cops.number,
            "cop_placement": self.cops.placement,
            "cop_win": self.cop_win,
            "fixpoint_sizes": self.cops.games.iter().map(|g| json!({
                "cops": g.cops,
                "winning_positions": g.winning_sizes,
            })).collect::<Vec<_>>(),
            "automorphism_group_order": self.group_order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds;

    #[test]
    fn cops_never_exceed_domination() {
        for g in [seeds::cycle(4), seeds::cycle(5), seeds::path(5), seeds::petersen()] {
            let r = GamesReport::compute(&g, 0, &GamesOptions::default()).unwrap();
            assert!(r.cops.number.unwrap() <= r.domination.number);
        }
    }

    #[test]
    fn report_json_fields() {
        let r = GamesReport::compute(&seeds::cycle(4), 0, &GamesOptions::default()).unwrap();
        let j = r.to_json();
        assert_eq!(j["domination_number"], json!(2));
        assert_eq!(j["cop_number"], json!(2));
        assert_eq!(j["automorphism_group_order"], json!(8));
        assert_eq!(j["cop_placement"].as_array().unwrap().len(), 2);
    }
}
