//! Densification of the deterministic process from C4, fitted on exact
//! sizes, and an ILT(p) volume sweep over ten RNG seeds.

use ilt::generator::{GrowthBudget, GrowthPrediction};
use ilt::seeds;
use ilt::sweep::{densification_plot, IltPSweep};

fn main() -> ilt::Result<()> {
    let g0 = seeds::cycle(4);
    let sizes: Vec<(u64, u64)> = (0..=12)
        .map(|t| {
            let p = GrowthPrediction::for_graph(&g0, t);
            (u64::try_from(&p.n_t).unwrap(), u64::try_from(&p.e_t).unwrap())
        })
        .collect();
    let (_, slope) = densification_plot(&sizes, 6)?;
    println!("C4 densification exponent over t in [6, 12]: {slope:.4}");

    let sweep = IltPSweep::run(&seeds::complete(1), 0.5, 10, 1, 10, GrowthBudget::default())?;
    print!("{}", sweep.to_csv());
    Ok(())
}
