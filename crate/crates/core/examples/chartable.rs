//! Builds the full character table of U(q) family by family and prints the
//! completeness checks.
//!
//!     cargo run --release --example chartable -- 3

use std::time::Instant;

use d4_unipotent::chars::{build_all, ClassCache};
use d4_unipotent::ugroup::UnipotentGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(2), |s| s.parse())?;
    let start = Instant::now();
    let cache = ClassCache::new(UnipotentGroup::with_order(q)?, q > 3);
    let table = build_all(&cache)?;
    for f in &table.families {
        let parts: Vec<String> = f
            .parts
            .iter()
            .map(|p| {
                format!(
                    "{} x deg {} (expected {} = {})",
                    p.found, p.degree_value, p.expected_count, p.expected
                )
            })
            .collect();
        println!(
            "{:<14} {}  {}",
            f.family,
            if f.passed() { "ok  " } else { "FAIL" },
            parts.join(", ")
        );
    }
    let c = &table.checks;
    println!(
        "characters {} / classes {}",
        c.character_count, c.class_count
    );
    println!(
        "sum of squared degrees {} / |U| {}",
        c.sum_of_squares, c.group_order
    );
    println!("degree multiplicities {:?}", c.multiplicities);
    println!("table polynomials     {:?}", c.expected_multiplicities);
    println!(
        "orthonormal {}, kernel partition {}",
        c.orthonormal, c.kernel_partition
    );
    println!(
        "{} in {:.1?}",
        if c.passed() { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    Ok(())
}
