//! Enumerates the conjugacy classes of U(q) and compares the count with the
//! class-number polynomial.
//!
//!     cargo run --release --example conjugacy_classes -- 3

use std::collections::BTreeMap;
use std::time::Instant;

use d4_unipotent::classes::{class_count_polynomial, conjugacy_classes, Parity};
use d4_unipotent::ugroup::UnipotentGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let g = UnipotentGroup::with_order(q)?;
    let start = Instant::now();
    let cd = conjugacy_classes(&g, None, q > 3)?;
    let expected = class_count_polynomial(q as u64, Parity::of(q as u64))?;
    println!(
        "q = {q}: {} classes (polynomial gives {expected}) in {:.2?}",
        cd.count(),
        start.elapsed()
    );

    let mut sizes: BTreeMap<u64, usize> = BTreeMap::new();
    for c in 0..cd.count() {
        *sizes.entry(cd.size(c)?).or_default() += 1;
    }
    for (size, n) in sizes {
        println!("  {n:>5} classes of size {size}");
    }
    Ok(())
}
