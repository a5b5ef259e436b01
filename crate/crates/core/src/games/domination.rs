use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Largest order handled by the exact solvers (one 64-bit word per set).
pub const DEFAULT_EXACT_NODES: usize = 64;

/// Closed neighbourhoods as bitmasks.
pub(crate) fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.node_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u64 << v, |m, &w| m | 1u64 << w)
        })
        .collect()
}

pub(crate) fn check_exact_budget(g: &Graph, max_nodes: usize) -> Result<()> {
    let cap = max_nodes.min(DEFAULT_EXACT_NODES);
    if g.node_count() > cap {
        return Err(Error::budget(format!(
            "exact search on {} nodes exceeds the cap of {cap}",
            g.node_count()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domination {
    pub number: usize,
    /// One minimum dominating set, ascending.
    pub set: Vec<NodeId>,
}

/// Exact domination number by branch and bound.
pub fn domination_number(g: &Graph, max_nodes: usize) -> Result<Domination> {
    check_exact_budget(g, max_nodes)?;
    let n = g.node_count();
    if n == 0 {
        return Ok(Domination {
            number: 0,
            set: vec![],
        });
    }
    let closed = closed_masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        closed: &closed,
        all,
        best: greedy(&closed, all),
        chosen: Vec::new(),
    };
    search.branch(0);
    let mut set = search.best;
    set.sort_unstable();
    Ok(Domination {
        number: set.len(),
        set,
    })
}

fn greedy(closed: &[u64], all: u64) -> Vec<NodeId> {
    let mut dominated = 0u64;
    let mut set = Vec::new();
    while dominated != all {
        let v = (0..closed.len())
            .max_by_key(|&v| ((closed[v] & !dominated).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty graph");
        set.push(v);
        dominated |= closed[v];
    }
    set
}

struct Search<'a> {
    closed: &'a [u64],
    all: u64,
    best: Vec<NodeId>,
    chosen: Vec<NodeId>,
}

impl Search<'_> {
    fn branch(&mut self, dominated: u64) {
        if dominated == self.all {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let open = self.all & !dominated;
        let max_cover = self
            .closed
            .iter()
            .map(|m| (m & open).count_ones())
            .max()
            .unwrap_or(0);
        let lower = open.count_ones().div_ceil(max_cover) as usize;
        if self.chosen.len() + lower >= self.best.len() {
            return;
        }
        // some dominator of the tightest undominated vertex must be chosen
        let pivot = bits(open)
            .min_by_key(|&v| self.closed[v].count_ones())
            .expect("open is non-empty");
        let mut candidates: Vec<NodeId> = bits(self.closed[pivot]).collect();
        candidates.sort_by_key(|&u| std::cmp::Reverse((self.closed[u] & open).count_ones()));
        for u in candidates {
            self.chosen.push(u);
            self.branch(dominated | self.closed[u]);
            self.chosen.pop();
        }
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::ilt_step;
    use crate::seeds;

    fn brute_force(g: &Graph) -> usize {
        let n = g.node_count();
        let closed = closed_masks(g);
        let all = (1u64 << n) - 1;
        (0u64..1 << n)
            .filter(|s| bits(*s).fold(0, |m, v| m | closed[v]) == all)
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn matches_exhaustive_search() {
        for g in [
            seeds::complete(3),
            seeds::cycle(4),
            seeds::cycle(5),
            seeds::path(5),
            seeds::petersen(),
            ilt_step(&seeds::path(4)),
            ilt_step(&seeds::cycle(5)),
        ] {
            let d = domination_number(&g, 64).unwrap();
            assert_eq!(d.number, brute_force(&g));
            let covered = d.set.iter().fold(0u64, |m, &v| m | closed_masks(&g)[v]);
            assert_eq!(covered.count_ones() as usize, g.node_count());
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(domination_number(&seeds::complete(3), 64).unwrap().number, 1);
        assert_eq!(domination_number(&seeds::cycle(4), 64).unwrap().number, 2);
        assert_eq!(domination_number(&seeds::petersen(), 64).unwrap().number, 3);
    }

    #[test]
    fn budget_enforced() {
        assert!(domination_number(&seeds::cycle(10), 8).unwrap_err().is_budget());
        assert!(domination_number(&seeds::cycle(65), 1000).unwrap_err().is_budget());
    }
}
