//! Cops and robber with perfect play, decided by retrograde analysis.
//!
//! Cops place first, then the robber. Each round is a cop move followed by a
//! robber move; every player may pass and cops may share a node. A position
//! is a sorted multiset of cop nodes, the robber node and the side to move.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Default cap on `C(n+k-1, k) * n` game positions per side.
pub const DEFAULT_STATE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopGame {
    pub cops: usize,
    pub cops_win: bool,
    /// A cop start that wins against every robber start.
    pub placement: Option<Vec<NodeId>>,
    /// Winning positions (both sides to move) after each fixpoint iteration.
    pub winning_sizes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopNumber {
    /// `None` when more than `k_max` cops are needed.
    pub number: Option<usize>,
    pub placement: Option<Vec<NodeId>>,
    pub games: Vec<CopGame>,
}

/// Smallest `k <= k_max` for which `k` cops win.
pub fn cop_number(g: &Graph, k_max: usize, state_budget: u64) -> Result<CopNumber> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if k_max == 0 {
        return Err(Error::invalid("k_max must be positive"));
    }
    let mut games = Vec::new();
    for k in 1..=k_max {
        let game = solve(g, k, state_budget)?;
        let won = game.cops_win;
        let placement = game.placement.clone();
        games.push(game);
        if won {
            return Ok(CopNumber {
                number: Some(k),
                placement,
                games,
            });
        }
    }
    Ok(CopNumber {
        number: None,
        placement: None,
        games,
    })
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Colex rank of a sorted multiset via `c_i + i` strictly increasing.
struct MultisetRanker {
    table: Vec<Vec<u64>>,
}

impl MultisetRanker {
    fn new(n: usize, k: usize) -> Self {
        let table = (0..k)
            .map(|i| (0..n + k).map(|d| binom(d as u64, i as u64 + 1)).collect())
            .collect();
        MultisetRanker { table }
    }

    fn rank(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.table[i][c as usize + i])
            .sum::<u64>() as usize
    }
}

/// All sorted multisets of size `k` over `0..n`, in rank order.
fn multisets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    loop {
        out.push(cur.clone());
        // colex successor
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            let cap = if i + 1 < k { cur[i + 1] } else { n as u32 - 1 };
            if cur[i] < cap {
                cur[i] += 1;
                for c in cur.iter_mut().take(i) {
                    *c = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

fn solve(g: &Graph, k: usize, state_budget: u64) -> Result<CopGame> {
    let n = g.node_count();
    let positions = binom((n + k - 1) as u64, k as u64).saturating_mul(n as u64);
    if positions > state_budget {
        return Err(Error::budget(format!(
            "{k}-cop game on {n} nodes has {positions} positions, cap {state_budget}"
        )));
    }
    let ranker = MultisetRanker::new(n, k);
    let sets = multisets(n, k);
    debug_assert!(sets.iter().enumerate().all(|(i, s)| ranker.rank(s) == i));
    let closed: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v as u32);
            c.sort_unstable();
            c
        })
        .collect();
    // cop moves from each multiset, as ranks of the resulting multisets
    let moves: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut out = Vec::new();
            let mut pick = vec![0u32; k];
            expand(s, &closed, 0, &mut pick, &ranker, &mut out);
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let idx = |c: usize, r: usize| c * n + r;
    let occupied = |c: usize, r: usize| sets[c].contains(&(r as u32));
    let total = sets.len() * n;
    // cop_turn[p]: cops to move and win; robber_turn[p]: robber to move, cops win
    let mut cop_turn = vec![false; total];
    let mut robber_turn = vec![false; total];
    for c in 0..sets.len() {
        for r in 0..n {
            if occupied(c, r) {
                cop_turn[idx(c, r)] = true;
                robber_turn[idx(c, r)] = true;
            }
        }
    }
    let count = |a: &[bool], b: &[bool]| {
        (a.iter().filter(|&&x| x).count() + b.iter().filter(|&&x| x).count()) as u64
    };
    let mut winning_sizes = vec![count(&cop_turn, &robber_turn)];
    loop {
        let mut changed = false;
        for c in 0..sets.len() {
            for r in 0..n {
                let p = idx(c, r);
                if !robber_turn[p]
                    && closed[r]
                        .iter()
                        .all(|&r2| cop_turn[idx(c, r2 as usize)])
                {
                    robber_turn[p] = true;
                    changed = true;
                }
            }
        }
        for c in 0..sets.len() {
            for r in 0..n {
                let p = idx(c, r);
                if !cop_turn[p] && moves[c].iter().any(|&c2| robber_turn[idx(c2, r)]) {
                    cop_turn[p] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        winning_sizes.push(count(&cop_turn, &robber_turn));
    }
    let placement = (0..sets.len())
        .find(|&c| (0..n).all(|r| cop_turn[idx(c, r)]))
        .map(|c| sets[c].iter().map(|&v| v as NodeId).collect());
    Ok(CopGame {
        cops: k,
        cops_win: placement.is_some(),
        placement,
        winning_sizes,
    })
}

fn expand(
    from: &[u32],
    closed: &[Vec<u32>],
    i: usize,
    pick: &mut Vec<u32>,
    ranker: &MultisetRanker,
    out: &mut Vec<usize>,
) {
    if i == from.len() {
        let mut sorted = pick.clone();
        sorted.sort_unstable();
        out.push(ranker.rank(&sorted));
        return;
    }
    for &to in &closed[from[i] as usize] {
        pick[i] = to;
        expand(from, closed, i + 1, pick, ranker, out);
    }
}

/// Cop-win test by dismantling: repeatedly delete a corner, a vertex whose
/// closed neighbourhood lies inside another's.
pub fn is_cop_win(g: &Graph) -> bool {
    let n = g.node_count();
    if n <= 1 {
        return true;
    }
    let mut closed = g.adjacency_bits();
    for (v, row) in closed.iter_mut().enumerate() {
        row[v / 64] |= 1 << (v % 64);
    }
    let mut alive = vec![true; n];
    let mut remaining = n;
    let subset = |a: &[u64], b: &[u64], alive_mask: &[u64]| {
        a.iter()
            .zip(b)
            .zip(alive_mask)
            .all(|((x, y), m)| x & m & !y == 0)
    };
    while remaining > 1 {
        let mut mask = vec![0u64; n.div_ceil(64)];
        for v in (0..n).filter(|&v| alive[v]) {
            mask[v / 64] |= 1 << (v % 64);
        }
        let corner = (0..n).filter(|&u| alive[u]).find(|&u| {
            (0..n).any(|v| v != u && alive[v] && subset(&closed[u], &closed[v], &mask))
        });
        match corner {
            Some(u) => {
                alive[u] = false;
                remaining -= 1;
            }
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::ilt_step;
    use crate::seeds;

    #[test]
    fn multiset_ranks_are_dense() {
        for (n, k) in [(5, 1), (5, 2), (4, 3)] {
            let sets = multisets(n, k);
            assert_eq!(sets.len() as u64, binom((n + k - 1) as u64, k as u64));
            let r = MultisetRanker::new(n, k);
            for (i, s) in sets.iter().enumerate() {
                assert!(s.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(r.rank(s), i);
            }
        }
    }

    #[test]
    fn small_cop_numbers() {
        let budget = DEFAULT_STATE_BUDGET;
        assert_eq!(cop_number(&seeds::complete(3), 3, budget).unwrap().number, Some(1));
        assert_eq!(cop_number(&seeds::cycle(4), 3, budget).unwrap().number, Some(2));
        assert_eq!(cop_number(&seeds::path(5), 3, budget).unwrap().number, Some(1));
        assert_eq!(cop_number(&seeds::petersen(), 3, budget).unwrap().number, Some(3));
        assert_eq!(cop_number(&seeds::cycle(5), 1, budget).unwrap().number, None);
    }

    #[test]
    fn fixpoint_grows_monotonically() {
        let c = cop_number(&ilt_step(&seeds::cycle(4)), 2, DEFAULT_STATE_BUDGET).unwrap();
        for game in &c.games {
            assert!(game.winning_sizes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn dismantling_agrees_with_game() {
        for g in [
            seeds::complete(1),
            seeds::complete(3),
            seeds::cycle(4),
            seeds::cycle(5),
            seeds::path(5),
            seeds::petersen(),
            ilt_step(&seeds::path(4)),
            ilt_step(&seeds::cycle(4)),
        ] {
            let game = cop_number(&g, 1, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(is_cop_win(&g), game.number == Some(1));
        }
    }

    #[test]
    fn state_budget_enforced() {
        let err = cop_number(&seeds::cycle(20), 2, 100).unwrap_err();
        assert!(err.is_budget());
    }
}
