//! Layers a config file under command-line style overrides and prints the
//! resolved settings with their hash.

use ilt::config::{ExperimentConfig, Overrides};

fn main() -> ilt::Result<()> {
    let file = "# experiment\nseed_graph = petersen\nt_max = 4\nrng_seed = 11\n";
    let flags = Overrides {
        t_max: Some(2),
        ..Default::default()
    };
    let config = ExperimentConfig::resolve(Some(file), flags)?;
    print!("{}", config.canonical());
    print!("{}", config.header("example"));
    Ok(())
}
