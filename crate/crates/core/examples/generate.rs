//! Grows C4 for a few steps and compares sizes with the closed forms.

use ilt::generator::{ilt_sequence, GrowthBudget, GrowthPrediction};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    let g0 = seeds::cycle(4);
    for (t, g) in ilt_sequence(&g0, 6, &GrowthBudget::default())?.iter().enumerate() {
        let p = GrowthPrediction::for_graph(&g0, t);
        println!(
            "t={t} n={} e={} vol={}  predicted n={} e={} vol={}  match={}",
            g.node_count(),
            g.edge_count(),
            g.volume(),
            p.n_t,
            p.e_t,
            p.vol_t,
            p.matches(g)
        );
    }
    Ok(())
}
