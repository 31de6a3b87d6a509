//! Orbits of the complement K on the linear characters of the abelian
//! normal subgroup A, and the claimed representative sets.
//!
//!     cargo run --release --example k_orbits -- 4

use d4_unipotent::chars::k_orbit_analysis;
use d4_unipotent::ugroup::UnipotentGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(2), |s| s.parse())?;
    let report = k_orbit_analysis(&UnipotentGroup::with_order(q)?)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(())
}
