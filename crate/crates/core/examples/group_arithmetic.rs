//! Multiplication, inversion, conjugation and word collection in U(q).
//!
//!     cargo run --example group_arithmetic -- 3

use d4_unipotent::rootsys::RootSet;
use d4_unipotent::ugroup::{QuotientContext, UnipotentGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let g = UnipotentGroup::with_order(q)?;
    let f = g.field();
    let one = f.one();

    let a = g.parse_element("1,0,1,0,0,0,0,0,0,0,0,0")?;
    let b = g.parse_element("0,1,0,1,0,0,0,0,0,0,0,1")?;
    let ab = g.mul(&a, &b, None);
    println!("a     = {}", g.format_element(&a));
    println!("b     = {}", g.format_element(&b));
    println!("ab    = {}", g.format_element(&ab));
    println!("a^-1  = {}", g.format_element(&g.inv(&a, None)));
    println!("b^a   = {}", g.format_element(&g.conj(&b, &a, None)));
    println!("[a,b] = {}", g.format_element(&g.commutator(&a, &b, None)));

    // collecting a scrambled word into normal form
    let word = vec![(12, one), (3, one), (1, one), (2, one), (3, one), (1, one)];
    let n = g.normalize(&word, None)?;
    println!("x12 x3 x1 x2 x3 x1 collects to {}", g.format_element(&n));

    // the same product in the quotient by the centre
    let centre = QuotientContext::new(RootSet::single(12))?;
    println!(
        "ab mod X12 = {}",
        g.format_element(&g.mul(&a, &b, Some(&centre)))
    );
    println!(
        "|U| = {}, |U/X12| = {}",
        g.order(None),
        g.order(Some(&centre))
    );
    Ok(())
}
