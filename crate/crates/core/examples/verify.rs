//! Runs the full battery of checks for one q and prints the TSV report.
//!
//!     cargo run --release --example verify -- 3

use d4_unipotent::verify::{cmd_verify, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(2), |s| s.parse())?;
    let mut cfg = RunConfig::with_order(q)?;
    cfg.allow_large = q > 3;
    let report = cmd_verify(&cfg)?;
    print!("{}", report.to_tsv());
    if !report.passed {
        std::process::exit(1);
    }
    Ok(())
}
