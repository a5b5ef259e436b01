//! Lineage of every node of G_2 grown from P4, with the degree bounds it
//! implies and the node's actual degree.

use ilt::generator::{degree_bounds, ilt_nth, lineage_of, GrowthBudget};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    let g0 = seeds::path(4);
    let t = 2;
    let g = ilt_nth(&g0, t, &GrowthBudget::default())?;
    println!("node ancestor bits  degree  bounds");
    for v in 0..g.node_count() {
        let l = lineage_of(v, t, g0.node_count());
        let (lo, hi) = degree_bounds(&l, g0.degree(l.ancestor) as u64);
        println!("{v:>4} {:>8} {:>4} {:>7}  [{lo}, {hi}]", l.ancestor, l.bitstring(), g.degree(v));
    }
    Ok(())
}
