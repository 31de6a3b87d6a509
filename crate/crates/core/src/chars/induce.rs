use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::classes::ClassData;
use crate::rootsys::{self, RootSet, NUM_ROOTS};
use crate::ugroup::{subgroup::enumerate_support, GroupElement};

use super::classfn::{push_canonical, width};
use super::{CharError, ClassFunction, ExplicitSubgroup, LinearCharacter};

/// Transversals up to this size are checked pairwise when a plan is built.
const TRANSVERSAL_CHECK_LIMIT: usize = 1 << 12;

/// Induction from one pattern subgroup `P` of an ambient (quotient) group.
///
/// With `T` the elements supported on the complement coordinates, a right
/// transversal of `P`, `λ^G(g) = Σ_{t∈T} λ°(t g t⁻¹)`.  For every class
/// representative the plan stores the conjugates `t g t⁻¹` that land in `P`,
/// so inducing each of many characters of `P` is a cheap pass over them.
pub struct InductionPlan {
    ambient: Arc<ClassData>,
    domain: RootSet,
    index: u64,
    offsets: Vec<usize>,
    hits: Vec<[u8; NUM_ROOTS]>,
}

impl InductionPlan {
    pub fn new(ambient: Arc<ClassData>, domain: RootSet) -> Result<Self, CharError> {
        let group = ambient.group();
        let killed = ambient.killed();
        let live = domain.difference(killed);
        if !rootsys::is_closed(live.union(killed)) {
            return Err(CharError::NotContained(domain));
        }
        let kbits = killed.bits();
        let complement = live.union(killed).complement();
        let transversal: Vec<GroupElement> = enumerate_support(complement, group.q()).collect();
        let inverses: Vec<GroupElement> = transversal
            .iter()
            .map(|t| group.inv_raw(t, kbits))
            .collect();

        if transversal.len() <= TRANSVERSAL_CHECK_LIMIT {
            // P t = P t' iff t' t⁻¹ ∈ P
            let inside = |g: &GroupElement| g.support().difference(killed).is_subset(live);
            for (a, ta) in transversal.iter().enumerate() {
                for tb_inv in &inverses[a + 1..] {
                    if inside(&group.mul_raw(ta, tb_inv, kbits)) {
                        return Err(CharError::NoTransversal(domain));
                    }
                }
            }
        }

        let per_class: Vec<Vec<[u8; NUM_ROOTS]>> = ambient
            .reps()
            .par_iter()
            .map(|g| {
                let mut found = Vec::new();
                for (t, ti) in transversal.iter().zip(&inverses) {
                    let y = group.mul_raw(&group.mul_raw(t, g, kbits), ti, kbits);
                    if y.support().is_subset(live) {
                        found.push(y.indices());
                    }
                }
                found
            })
            .collect();
        let mut offsets = Vec::with_capacity(per_class.len() + 1);
        let mut hits = Vec::new();
        offsets.push(0);
        for v in per_class {
            hits.extend(v);
            offsets.push(hits.len());
        }
        Ok(InductionPlan {
            ambient,
            domain: live,
            index: transversal.len() as u64,
            offsets,
            hits,
        })
    }

    pub fn ambient(&self) -> &Arc<ClassData> {
        &self.ambient
    }

    pub fn domain(&self) -> RootSet {
        self.domain
    }

    /// `[G : P]`, the degree of every induced linear character.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn induce(&self, lambda: &LinearCharacter) -> Result<ClassFunction, CharError> {
        if lambda.domain() != self.domain
            || lambda.killed() != self.ambient.killed()
            || lambda.field().q() != self.ambient.q()
        {
            return Err(CharError::NotContained(lambda.domain()));
        }
        let p = self.ambient.group().p() as usize;
        let mut values = Vec::with_capacity(self.ambient.count() * width(p));
        let mut cyc = vec![0i64; p];
        for c in 0..self.ambient.count() {
            cyc.fill(0);
            for y in &self.hits[self.offsets[c]..self.offsets[c + 1]] {
                cyc[lambda.exponent_raw(y)] += 1;
            }
            push_canonical(&mut values, &cyc);
        }
        Ok(ClassFunction::from_canonical(self.ambient.clone(), values))
    }
}

/// One-shot induction of a linear character of a pattern subgroup.
pub fn induce(
    lambda: &LinearCharacter,
    ambient: &Arc<ClassData>,
) -> Result<ClassFunction, CharError> {
    InductionPlan::new(ambient.clone(), lambda.domain())?.induce(lambda)
}

/// Induction by the defining sum `|P|⁻¹ Σ_{x∈G} λ°(x g x⁻¹)`.  Costs
/// `|G|` products per class; meant as an independent check at small q.
pub fn induce_full_sum(
    lambda: &LinearCharacter,
    ambient: &Arc<ClassData>,
) -> Result<ClassFunction, CharError> {
    if lambda.killed() != ambient.killed() {
        return Err(CharError::NotContained(lambda.domain()));
    }
    let group = ambient.group();
    let kbits = ambient.killed().bits();
    let p = group.p() as usize;
    let order = ambient.group_order();
    let sub_order = (ambient.q() as u64).pow(lambda.domain().len() as u32);
    let mut values = Vec::new();
    for g in ambient.reps() {
        let mut cyc = vec![0i64; p];
        for l in 0..order {
            let x = ambient.element_at(l);
            let y = group.mul_raw(
                &group.mul_raw(&x, g, kbits),
                &group.inv_raw(&x, kbits),
                kbits,
            );
            if lambda.contains(&y) {
                cyc[lambda.exponent_raw(&y.indices())] += 1;
            }
        }
        for v in cyc.iter_mut() {
            debug_assert_eq!(*v % sub_order as i64, 0);
            *v /= sub_order as i64;
        }
        push_canonical(&mut values, &cyc);
    }
    Ok(ClassFunction::from_canonical(ambient.clone(), values))
}

/// Right transversal of an explicit subgroup found by scanning the ambient
/// group in index order.
pub(crate) fn scan_transversal(sub: &ExplicitSubgroup, ambient: &ClassData) -> Vec<GroupElement> {
    let group = ambient.group();
    let kbits = ambient.killed().bits();
    let mut covered: HashSet<GroupElement> = HashSet::new();
    let mut reps = Vec::new();
    for l in 0..ambient.group_order() {
        let x = ambient.element_at(l);
        if covered.contains(&x) {
            continue;
        }
        for h in sub.elements() {
            covered.insert(group.mul_raw(h, &x, kbits));
        }
        reps.push(x);
    }
    reps
}

/// Induces the character carried by an explicit subgroup.  `transversal`
/// must be a right transversal (`G = ⊔ H r`); when absent one is computed.
pub fn induce_explicit(
    sub: &ExplicitSubgroup,
    ambient: &Arc<ClassData>,
    transversal: Option<&[GroupElement]>,
) -> Result<ClassFunction, CharError> {
    if sub.killed() != ambient.killed() {
        return Err(CharError::AmbientMismatch);
    }
    let exps = sub.exponents().ok_or(CharError::NotHomomorphism)?;
    let owned;
    let reps = match transversal {
        Some(r) => r,
        None => {
            owned = scan_transversal(sub, ambient);
            &owned
        }
    };
    if reps.len() as u64 * sub.order() as u64 != ambient.group_order() {
        return Err(CharError::NoTransversal(RootSet::EMPTY));
    }
    let group = ambient.group();
    let kbits = ambient.killed().bits();
    let p = group.p() as usize;
    let inverses: Vec<GroupElement> = reps.iter().map(|r| group.inv_raw(r, kbits)).collect();
    let rows: Vec<Vec<i64>> = ambient
        .reps()
        .par_iter()
        .map(|g| {
            let mut cyc = vec![0i64; p];
            for (r, ri) in reps.iter().zip(&inverses) {
                let y = group.mul_raw(&group.mul_raw(r, g, kbits), ri, kbits);
                if let Some(i) = sub.position(&y) {
                    cyc[exps[i] as usize] += 1;
                }
            }
            cyc
        })
        .collect();
    let mut values = Vec::with_capacity(rows.len() * width(p));
    for cyc in rows {
        push_canonical(&mut values, &cyc);
    }
    Ok(ClassFunction::from_canonical(ambient.clone(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;
    use crate::ugroup::{QuotientContext, UnipotentGroup};

    fn cd(q: u32, killed: &[usize]) -> Arc<ClassData> {
        let g = UnipotentGroup::with_order(q).unwrap();
        let ctx = QuotientContext::new(killed.iter().copied().collect()).unwrap();
        Arc::new(conjugacy_classes(&g, Some(&ctx), false).unwrap())
    }

    fn lambda(a: &ClassData, domain: RootSet, params: &[(usize, u8)]) -> LinearCharacter {
        let mut raw = [0u8; NUM_ROOTS];
        for &(i, s) in params {
            raw[i - 1] = s;
        }
        LinearCharacter::from_raw(a.group().field_arc(), domain, a.killed(), raw).unwrap()
    }

    #[test]
    fn trivial_on_whole_group_induces_to_trivial() {
        let a = cd(2, &[]);
        let l = lambda(&a, RootSet::ALL, &[]);
        let chi = induce(&l, &a).unwrap();
        assert_eq!(chi.raw_values(), ClassFunction::trivial(a).raw_values());
    }

    #[test]
    fn plan_matches_full_sum_at_q2() {
        let a = cd(2, &[]);
        for (domain, params) in [
            (rootsys::v_alpha(12).unwrap(), vec![(12, 1)]),
            (rootsys::v_alpha(5).unwrap(), vec![(5, 1)]),
            (rootsys::v_alpha(8).unwrap(), vec![(8, 1)]),
            (rootsys::v_alpha(11).unwrap(), vec![(11, 1)]),
        ] {
            let l = lambda(&a, domain, &params);
            let fast = induce(&l, &a).unwrap();
            let slow = induce_full_sum(&l, &a).unwrap();
            assert_eq!(fast.raw_values(), slow.raw_values(), "{domain:?}");
        }
    }

    #[test]
    fn plan_matches_full_sum_in_odd_quotient() {
        let a = cd(3, &[9, 10, 11, 12]);
        let l = lambda(
            &a,
            [3, 4, 5, 6, 7, 8].into_iter().collect(),
            &[(8, 2), (3, 1), (4, 2)],
        );
        let fast = induce(&l, &a).unwrap();
        assert_eq!(
            fast.raw_values(),
            induce_full_sum(&l, &a).unwrap().raw_values()
        );
        assert_eq!(fast.degree(), 9);
        assert!(fast.is_irreducible());
    }

    #[test]
    fn explicit_induction_agrees_with_pattern_induction() {
        let a = cd(2, &[10, 11, 12]);
        let domain: RootSet = [2, 3, 4, 6, 7, 8, 9].into_iter().collect();
        let l = lambda(&a, domain, &[(8, 1), (9, 1), (3, 1)]);
        let sub = ExplicitSubgroup::from_linear(&l, a.group()).unwrap();
        let chi = induce_explicit(&sub, &a, None).unwrap();
        assert_eq!(chi.raw_values(), induce(&l, &a).unwrap().raw_values());
    }

    #[test]
    fn reducible_induction_is_detected() {
        let a = cd(2, &[]);
        // regular character of the centre induced up
        let l = lambda(&a, RootSet::single(12), &[]);
        let chi = induce(&l, &a).unwrap();
        assert_eq!(chi.degree(), 1 << 11);
        assert!(!chi.is_irreducible());
    }
}
