//! Spectral gap, Laplacian lambda_1 and the adjacency recurrence for K2.

use ilt::generator::{ilt_sequence, GrowthBudget};
use ilt::seeds;
use ilt::spectral::{spectral_gap, verify_adjacency_recurrence};

fn main() -> ilt::Result<()> {
    let seq = ilt_sequence(&seeds::complete(2), 6, &GrowthBudget::default())?;
    for (t, g) in seq.iter().enumerate() {
        let r = spectral_gap(g)?;
        let rec = verify_adjacency_recurrence(g)?;
        println!(
            "t={t} n={:>3} lambda1={:.6} gap={:.6} rho0/|rho1|={:.4} recurrence deviation {:.1e}",
            g.node_count(),
            r.lambda1,
            r.lambda_gap,
            r.adjacency_ratio,
            rec.max_deviation
        );
    }
    Ok(())
}
