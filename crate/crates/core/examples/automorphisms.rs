//! Automorphism groups of K3 and its ILT graphs, and the lift of each seed
//! symmetry into the grown graph.

use ilt::games::{automorphisms, extend_automorphism, verify_embedding, DEFAULT_GROUP_BUDGET};
use ilt::generator::{ilt_nth, GrowthBudget};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    let g0 = seeds::complete(3);
    for f in automorphisms(&g0, DEFAULT_GROUP_BUDGET)? {
        println!("{:?} lifts to {:?}", f.image, extend_automorphism(&g0, &f, 1)?.image);
    }
    for t in 1..=3 {
        let g = ilt_nth(&g0, t, &GrowthBudget::default())?;
        let r = verify_embedding(&g0, &g, t, DEFAULT_GROUP_BUDGET)?;
        println!("t={t} |Aut(G_0)|={} |Aut(G_t)|={} embedding holds: {}", r.seed_group_order, r.grown_group_order, r.holds());
    }
    Ok(())
}
