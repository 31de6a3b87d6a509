//! Builds a single character family and prints each of its characters.
//!
//!     cargo run --release --example family -- F5,6,7 3

use d4_unipotent::chars::{build_family, descriptors, ClassCache, FamilyId};
use d4_unipotent::ugroup::UnipotentGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "F5,6,7".into());
    let q: u32 = args.next().map_or(Ok(3), |s| s.parse())?;
    let id = FamilyId::parse(&name).ok_or(format!("unknown family {name}"))?;
    let desc = descriptors()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or("no descriptor")?;
    if !desc.applies_to(q as u64) {
        return Err(format!("{} does not occur for q = {q}", desc.name).into());
    }
    let cache = ClassCache::new(UnipotentGroup::with_order(q)?, false);
    let report = build_family(&desc, &cache)?;
    for p in &report.parts {
        println!(
            "degree {} = {}: {} found, {} expected ({} candidates, {} reducible, {} wrong kernel, {} duplicates)",
            p.degree, p.degree_value, p.found, p.expected_count, p.candidates, p.reducible, p.wrong_kernel, p.duplicates
        );
    }
    for chi in report.characters.iter().take(8) {
        println!(
            "  {:<24} degree {:>4}  kernel {:?}",
            chi.label().unwrap_or(""),
            chi.degree(),
            chi.kernel_roots().to_vec()
        );
    }
    if report.characters.len() > 8 {
        println!("  ... {} more", report.characters.len() - 8);
    }
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(())
}
