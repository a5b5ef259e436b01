use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of distinct degrees tracked by [`DegreeHistogram::predicted`].
pub const DEFAULT_HISTOGRAM_ENTRIES: usize = 1 << 22;

/// Degree -> number of nodes with that degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeHistogram {
    pub counts: BTreeMap<u64, u64>,
}

impl DegreeHistogram {
    pub fn of(g: &Graph) -> Self {
        let mut counts = BTreeMap::new();
        for v in 0..g.node_count() {
            *counts.entry(g.degree(v) as u64).or_insert(0) += 1;
        }
        DegreeHistogram { counts }
    }

    /// Histogram of `G_t` without building it: each step sends a node of
    /// degree `d` to `2d + 1` and its clone to `d + 1`.
    pub fn predicted(g0: &Graph, t: usize, max_entries: usize) -> Result<Self> {
        let mut hist = Self::of(g0);
        for s in 1..=t {
            let mut next = BTreeMap::new();
            for (&d, &c) in &hist.counts {
                *next.entry(2 * d + 1).or_insert(0u64) += c;
                *next.entry(d + 1).or_insert(0u64) += c;
            }
            if next.len() > max_entries {
                return Err(Error::budget(format!(
                    "step t={s}: degree histogram has {} entries, cap {max_entries}",
                    next.len()
                )));
            }
            hist.counts = next;
        }
        Ok(hist)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `N_{>=k}`.
    pub fn count_at_least(&self, k: u64) -> u64 {
        self.counts.range(k..).map(|(_, c)| c).sum()
    }

    /// `(degree, count)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    /// Nodes per unit degree over octave bins `[2^b, 2^(b+1))`, as
    /// `(1.5 * 2^b, density)`. Degree-zero nodes are left out.
    pub fn octave_density(&self) -> Vec<(f64, f64)> {
        let mut bins = BTreeMap::<u32, u64>::new();
        for (d, c) in self.iter().filter(|&(d, _)| d > 0) {
            *bins.entry(63 - d.leading_zeros()).or_insert(0) += c;
        }
        bins.into_iter()
            .map(|(b, c)| {
                let lo = (1u64 << b) as f64;
                (1.5 * lo, c as f64 / lo)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{ilt_sequence, GrowthBudget};
    use crate::seeds;

    #[test]
    fn octave_bins() {
        let mut h = DegreeHistogram::default();
        h.counts.extend([(0, 5), (1, 2), (2, 4), (3, 4), (5, 8)]);
        assert_eq!(h.octave_density(), vec![(1.5, 2.0), (3.0, 4.0), (6.0, 2.0)]);
    }

    #[test]
    fn prediction_matches_generated_graphs() {
        for g0 in [seeds::complete(1), seeds::cycle(4), seeds::petersen(), seeds::path(5)] {
            let seq = ilt_sequence(&g0, 6, &GrowthBudget::default()).unwrap();
            for (t, g) in seq.iter().enumerate() {
                let predicted = DegreeHistogram::predicted(&g0, t, usize::MAX).unwrap();
                assert_eq!(predicted, DegreeHistogram::of(g));
            }
        }
    }

    #[test]
    fn tail_counts() {
        let h = DegreeHistogram::of(&seeds::path(4));
        assert_eq!(h.count_at_least(0), 4);
        assert_eq!(h.count_at_least(2), 2);
        assert_eq!(h.count_at_least(3), 0);
    }

    #[test]
    fn entry_budget_names_step() {
        let err = DegreeHistogram::predicted(&seeds::complete(1), 10, 4).unwrap_err();
        assert!(err.is_budget());
        assert!(err.to_string().contains("t="), "{err}");
    }
}
