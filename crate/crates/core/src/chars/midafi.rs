use std::sync::Arc;

use crate::classes::ClassData;
use crate::gf::FieldElement;
use crate::rootsys::{self, NUM_ROOTS};

use super::{CharError, ClassFunction, InductionPlan, LinearCharacter};

fn plan_for(alpha: usize, cd: &Arc<ClassData>) -> Result<InductionPlan, CharError> {
    let v = rootsys::v_alpha(alpha).map_err(|_| CharError::BadParameter {
        root: alpha,
        reason: "root index outside 1..=12",
    })?;
    if cd.killed().contains(alpha) {
        return Err(CharError::BadParameter {
            root: alpha,
            reason: "root subgroup is killed in this quotient",
        });
    }
    InductionPlan::new(cd.clone(), v)
}

fn lambda(plan: &InductionPlan, alpha: usize, s: u8) -> Result<LinearCharacter, CharError> {
    let cd = plan.ambient();
    let mut params = [0u8; NUM_ROOTS];
    params[alpha - 1] = s;
    LinearCharacter::from_raw(cd.group().field_arc(), plan.domain(), cd.killed(), params)
}

/// `μ_{α,s}`: the character of `V_α = Φ₊ \ leg(α)` equal to `φ(s d_α)` on
/// `X_α` and trivial on the other coordinates, induced to the ambient group.
pub fn midafi(
    alpha: usize,
    s: FieldElement,
    cd: &Arc<ClassData>,
) -> Result<ClassFunction, CharError> {
    if !cd.group().field().owns(s) {
        return Err(crate::gf::GfError::ForeignElement.into());
    }
    if s.index() == 0 {
        return Err(CharError::ZeroParameter("s"));
    }
    let plan = plan_for(alpha, cd)?;
    Ok(plan
        .induce(&lambda(&plan, alpha, s.index())?)?
        .with_label(format!("mu_{alpha},{}", s.index())))
}

/// All `μ_{α,s}`, `s ≠ 0` in field order, sharing one induction plan.
pub fn midafis(alpha: usize, cd: &Arc<ClassData>) -> Result<Vec<ClassFunction>, CharError> {
    let plan = plan_for(alpha, cd)?;
    (1..cd.q() as u8)
        .map(|s| {
            Ok(plan
                .induce(&lambda(&plan, alpha, s)?)?
                .with_label(format!("mu_{alpha},{s}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;
    use crate::ugroup::UnipotentGroup;

    #[test]
    fn midafis_at_q2_have_the_right_degrees() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let cd = Arc::new(conjugacy_classes(&g, None, false).unwrap());
        for alpha in 1..=12 {
            let leg = rootsys::leg(alpha).unwrap().len() as u32;
            let m = midafi(alpha, g.field().one(), &cd).unwrap();
            assert_eq!(m.degree(), 2i64.pow(leg), "alpha {alpha}");
            assert!(m.is_irreducible());
            let r = m.restrict_to_root_subgroup(alpha).unwrap();
            assert_eq!(r.len(), 1);
            assert_eq!((r[0].0.index(), r[0].1), (1, m.degree()));
        }
        assert_eq!(
            midafi(1, g.field().zero(), &cd).unwrap_err(),
            CharError::ZeroParameter("s")
        );
    }

    #[test]
    fn mu8_kernel() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let cd = Arc::new(conjugacy_classes(&g, None, false).unwrap());
        let k = midafi(8, g.field().one(), &cd).unwrap().kernel_roots();
        assert!(!k.contains(8));
        for a in [9, 10, 11, 12] {
            assert!(k.contains(a));
        }
    }
}
