//! Exact metrics of the Petersen graph's ILT sequence, as CSV and JSON.

use ilt::generator::{ilt_sequence, GrowthBudget};
use ilt::metrics::{MetricsOptions, MetricsReport};
use ilt::seeds;

fn main() -> ilt::Result<()> {
    let seq = ilt_sequence(&seeds::petersen(), 4, &GrowthBudget::default())?;
    let report = MetricsReport::compute("petersen", &seq, &MetricsOptions::default())?;
    print!("{}", report.to_csv());
    println!("{}", serde_json::to_string_pretty(&report.to_json()["ultimate_avg_distance"])?);
    Ok(())
}
