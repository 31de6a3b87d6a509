//! Computes every midafi of U(q) and shows degree, norm and restriction to
//! its root subgroup.
//!
//!     cargo run --release --example midafis -- 3

use std::sync::Arc;

use d4_unipotent::chars::midafis;
use d4_unipotent::classes::conjugacy_classes;
use d4_unipotent::rootsys;
use d4_unipotent::ugroup::UnipotentGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let g = UnipotentGroup::with_order(q)?;
    let cd = Arc::new(conjugacy_classes(&g, None, false)?);
    for alpha in 1..=12 {
        for mu in midafis(alpha, &cd)? {
            let restriction = mu.restrict_to_root_subgroup(alpha)?;
            println!(
                "{:<10} degree {:>3}  leg {:<14} irreducible {}  restriction {:?}  kernel {:?}",
                mu.label().unwrap_or(""),
                mu.degree(),
                format!("{:?}", rootsys::leg(alpha)?.to_vec()),
                mu.is_irreducible(),
                restriction
                    .iter()
                    .map(|(s, m)| (s.index(), *m))
                    .collect::<Vec<_>>(),
                mu.kernel_roots().to_vec()
            );
        }
    }
    Ok(())
}
