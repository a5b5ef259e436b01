use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::generator::{lineage_of, Lineage};
use crate::graph::{Graph, NodeId};

use super::domination::DEFAULT_EXACT_NODES;

/// Default cap on the number of automorphisms enumerated.
pub const DEFAULT_GROUP_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    pub image: Vec<NodeId>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn new(image: Vec<NodeId>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid("image is not a bijection"));
            }
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: NodeId) -> NodeId {
        self.image[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.len() == g.node_count()
            && g.edges().all(|(u, v)| g.has_edge(self.image[u], self.image[v]))
    }
}

/// Iterated neighbourhood colour refinement starting from degrees.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = colors.iter().collect::<HashSet<_>>().len();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w as usize]).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let palette: BTreeMap<&(usize, Vec<usize>), usize> = signatures
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        colors = signatures.iter().map(|s| palette[s]).collect();
        if palette.len() == classes {
            return colors;
        }
        classes = palette.len();
    }
}

/// The full automorphism group, by backtracking over refined colour classes.
pub fn automorphisms(g: &Graph, group_budget: usize) -> Result<Vec<Permutation>> {
    let n = g.node_count();
    if n > DEFAULT_EXACT_NODES {
        return Err(Error::budget(format!(
            "automorphism search on {n} nodes exceeds the cap of {DEFAULT_EXACT_NODES}"
        )));
    }
    let colors = refine(g);
    // assign in BFS order so each new vertex has an assigned neighbour
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !std::mem::replace(&mut placed[w as usize], true) {
                    order.push(w as usize);
                }
            }
        }
    }
    let mut state = Backtrack {
        g,
        colors: &colors,
        order: &order,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        budget: group_budget,
    };
    state.extend(0)?;
    state.found.sort();
    Ok(state.found)
}

struct Backtrack<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    order: &'a [NodeId],
    image: Vec<NodeId>,
    used: Vec<bool>,
    found: Vec<Permutation>,
    budget: usize,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            if self.found.len() == self.budget {
                return Err(Error::budget(format!(
                    "automorphism group exceeds {} elements",
                    self.budget
                )));
            }
            self.found.push(Permutation {
                image: self.image.clone(),
            });
            return Ok(());
        }
        let v = self.order[depth];
        for w in 0..self.g.node_count() {
            if self.used[w] || self.colors[w] != self.colors[v] || !self.consistent(depth, v, w) {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            self.extend(depth + 1)?;
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
        Ok(())
    }

    fn consistent(&self, depth: usize, v: NodeId, w: NodeId) -> bool {
        self.order[..depth]
            .iter()
            .all(|&u| self.g.has_edge(u, v) == self.g.has_edge(self.image[u], w))
    }
}

/// Lift of an automorphism of `G_0` to `G_t`, one step at a time: a node
/// keeps its image and the clone of `i` maps to the clone of `f(i)`.
pub fn extend_automorphism(g0: &Graph, f0: &Permutation, t: usize) -> Result<Permutation> {
    if !f0.is_automorphism(g0) {
        return Err(Error::invalid("map is not an automorphism of the seed graph"));
    }
    let mut f = f0.image.clone();
    for _ in 0..t {
        let n = f.len();
        f.extend_from_within(..);
        for x in &mut f[n..] {
            *x += n;
        }
    }
    Ok(Permutation { image: f })
}

/// The same lift computed per node from its lineage: the image keeps the
/// clone/survivor bits and swaps the ancestor.
pub fn lift_by_lineage(f0: &Permutation, t: usize) -> Permutation {
    let n0 = f0.len();
    let image = (0..n0 << t)
        .map(|v| {
            let l = lineage_of(v, t, n0);
            Lineage::new(f0.apply(l.ancestor), l.bits).index(n0)
        })
        .collect();
    Permutation { image }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub t: usize,
    pub seed_group_order: usize,
    pub grown_group_order: usize,
    pub injective: bool,
    pub homomorphism: bool,
    pub lifts_are_automorphisms: bool,
    pub stepwise_matches_lineage: bool,
    pub order_divides: bool,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.injective
            && self.homomorphism
            && self.lifts_are_automorphisms
            && self.stepwise_matches_lineage
            && self.order_divides
    }
}

/// Checks that lifting embeds `Aut(G_0)` into `Aut(G_t)`.
pub fn verify_embedding(g0: &Graph, g_t: &Graph, t: usize, group_budget: usize) -> Result<EmbeddingReport> {
    if g_t.node_count() != g0.node_count() << t {
        return Err(Error::invalid("grown graph has the wrong order"));
    }
    let aut0 = automorphisms(g0, group_budget)?;
    let aut_t = automorphisms(g_t, group_budget)?;
    let lifts = aut0
        .iter()
        .map(|f| extend_automorphism(g0, f, t))
        .collect::<Result<Vec<_>>>()?;
    let distinct: HashSet<&Permutation> = lifts.iter().collect();
    let mut homomorphism = true;
    'outer: for (i, f) in aut0.iter().enumerate() {
        for (j, h) in aut0.iter().enumerate() {
            let lifted = extend_automorphism(g0, &f.compose(h), t)?;
            if lifted != lifts[i].compose(&lifts[j]) {
                homomorphism = false;
                break 'outer;
            }
        }
    }
    Ok(EmbeddingReport {
        t,
        seed_group_order: aut0.len(),
        grown_group_order: aut_t.len(),
        injective: distinct.len() == lifts.len(),
        homomorphism,
        lifts_are_automorphisms: lifts.iter().all(|f| f.is_automorphism(g_t)),
        stepwise_matches_lineage: aut0
            .iter()
            .zip(&lifts)
            .all(|(f, lift)| &lift_by_lineage(f, t) == lift),
        order_divides: aut_t.len() % aut0.len() == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{ilt_nth, GrowthBudget};
    use crate::seeds;

    fn brute_force_order(g: &Graph) -> usize {
        fn permute(k: usize, p: &mut Vec<usize>, g: &Graph, count: &mut usize) {
            if k == p.len() {
                let perm = Permutation { image: p.clone() };
                *count += perm.is_automorphism(g) as usize;
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(k + 1, p, g, count);
                p.swap(k, i);
            }
        }
        let mut count = 0;
        permute(0, &mut (0..g.node_count()).collect(), g, &mut count);
        count
    }

    #[test]
    fn group_orders_match_brute_force() {
        for g in [
            seeds::cycle(4),
            seeds::complete(3),
            seeds::path(4),
            seeds::cycle(5),
            ilt_nth(&seeds::complete(2), 1, &GrowthBudget::default()).unwrap(),
            ilt_nth(&seeds::path(4), 1, &GrowthBudget::default()).unwrap(),
        ] {
            let auts = automorphisms(&g, DEFAULT_GROUP_BUDGET).unwrap();
            assert_eq!(auts.len(), brute_force_order(&g));
            assert!(auts.iter().all(|f| f.is_automorphism(&g)));
        }
        assert_eq!(automorphisms(&seeds::petersen(), DEFAULT_GROUP_BUDGET).unwrap().len(), 120);
    }

    #[test]
    fn lifts_of_c4_symmetries() {
        let g0 = seeds::cycle(4);
        let rotation = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let reflection = Permutation::new(vec![0, 3, 2, 1]).unwrap();
        let budget = GrowthBudget::default();
        let g1 = ilt_nth(&g0, 1, &budget).unwrap();
        let g2 = ilt_nth(&g0, 2, &budget).unwrap();
        let r1 = extend_automorphism(&g0, &rotation, 1).unwrap();
        assert_eq!(r1.image, vec![1, 2, 3, 0, 5, 6, 7, 4]);
        assert!(r1.is_automorphism(&g1));
        assert!(extend_automorphism(&g0, &reflection, 2).unwrap().is_automorphism(&g2));
        assert_eq!(
            extend_automorphism(&g0, &Permutation::identity(4), 3).unwrap(),
            Permutation::identity(32)
        );
    }

    #[test]
    fn non_automorphism_rejected() {
        let swap = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        assert!(extend_automorphism(&seeds::path(4), &swap, 1).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn embedding_on_small_seeds() {
        for (g0, t) in [(seeds::cycle(4), 1), (seeds::complete(3), 2), (seeds::path(4), 1)] {
            let gt = ilt_nth(&g0, t, &GrowthBudget::default()).unwrap();
            let r = verify_embedding(&g0, &gt, t, DEFAULT_GROUP_BUDGET).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn group_budget_enforced() {
        assert!(automorphisms(&seeds::complete(6), 100).unwrap_err().is_budget());
    }
}
