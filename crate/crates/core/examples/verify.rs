//! Runs the full verification harness and prints one line per entry.

use ilt::harness::{run, VerifyOptions};

fn main() {
    let only: Vec<String> = std::env::args().skip(1).collect();
    let report = run(&VerifyOptions {
        only,
        ..Default::default()
    });
    print!("{}", report.to_table());
    println!("all passed: {}", report.all_passed());
}
