//! Grows ILT(p) from a single node and prints size and volume ratio per step.

use ilt::generator::{IltPConfig, IltPProcess};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    let delta: f64 = std::env::args().nth(1).map_or(Ok(0.5), |s| s.parse()).expect("delta");
    let config = IltPConfig::new(delta, 7, 12)?;
    IltPProcess::new(seeds::complete(1), config)?.run(|t, h| {
        let ratio = h.volume() as f64 / (3.0 + delta).powi(t as i32);
        println!("t={t:>2} n={:>5} e={:>8} vol/(3+delta)^t={ratio:.4}", h.node_count(), h.edge_count());
    })?;
    Ok(())
}
