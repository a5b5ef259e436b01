//! Domination number and cop number of C4 and its first ILT steps.

use ilt::games::{cop_number, domination_number, is_cop_win, DEFAULT_EXACT_NODES, DEFAULT_STATE_BUDGET};
use ilt::generator::{ilt_sequence, GrowthBudget};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    for (t, g) in ilt_sequence(&seeds::cycle(4), 3, &GrowthBudget::default())?.iter().enumerate() {
        let gamma = domination_number(g, DEFAULT_EXACT_NODES)?;
        let cops = cop_number(g, 3, DEFAULT_STATE_BUDGET)?;
        println!(
            "t={t} n={:>2} gamma={} set={:?} cops={:?} start={:?} dismantlable={}",
            g.node_count(),
            gamma.number,
            gamma.set,
            cops.number,
            cops.placement,
            is_cop_win(g)
        );
    }
    Ok(())
}
