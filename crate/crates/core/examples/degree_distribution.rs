//! Exact degree distribution of G_20 grown from one node, octave binned.
//! Writes the log-log plot to degree_dist.svg in the working directory.

use ilt::metrics::{DegreeHistogram, DEFAULT_HISTOGRAM_ENTRIES};
use ilt::seeds;
use ilt::sweep::degree_distribution_plot;

fn main() -> ilt::Result<()> {
    let hist = DegreeHistogram::predicted(&seeds::complete(1), 20, DEFAULT_HISTOGRAM_ENTRIES)?;
    println!("{} nodes, {} distinct degrees", hist.total(), hist.counts.len());
    for (degree, density) in hist.octave_density() {
        println!("{degree:>12.1} {density:>14.4}");
    }
    std::fs::write("degree_dist.svg", degree_distribution_plot(&hist, "K1, t = 20").render()?)?;
    Ok(())
}
