//! Lists the positive roots of D4 with their hooks, arms and legs, and the
//! nontrivial commutator relations.
//!
//!     cargo run --example root_system

use d4_unipotent::rootsys;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let show = |s: rootsys::RootSet| format!("{:?}", s.to_vec());
    println!(
        "{:>3}  {:<6} {:>3}  {:<18} {:<14} leg",
        "i", "coeffs", "ht", "hook", "arm"
    );
    for r in rootsys::roots() {
        let i = r.index;
        println!(
            "{i:>3}  {:<6} {:>3}  {:<18} {:<14} {}",
            r.coeffs.map(|c| c.to_string()).join(""),
            r.height,
            show(rootsys::hook(i)?),
            show(rootsys::arm(i)?),
            show(rootsys::leg(i)?)
        );
    }
    println!();
    for c in rootsys::relations() {
        println!(
            "[x{}(t), x{}(u)] = x{}({}tu)",
            c.i,
            c.j,
            c.k,
            if c.sign < 0 { "-" } else { "" }
        );
    }
    Ok(())
}
