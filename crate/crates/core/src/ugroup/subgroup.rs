use std::collections::HashSet;

use serde::Serialize;

use super::{killed_of, GroupElement, GroupError, QuotientContext, UnipotentGroup};
use crate::rootsys::{self, RootSet};

/// Subgroups larger than this are not enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 10_000_000;

/// The subgroup of all elements supported on a closed root set, optionally
/// taken modulo a normal pattern subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternSubgroup {
    roots: RootSet,
    ctx: Option<QuotientContext>,
}

impl PatternSubgroup {
    pub fn roots(&self) -> RootSet {
        self.roots
    }

    pub fn context(&self) -> Option<&QuotientContext> {
        self.ctx.as_ref()
    }

    /// Roots carrying a coordinate in this (possibly quotient) subgroup.
    pub fn free_roots(&self) -> RootSet {
        self.roots.difference(killed_of(self.ctx.as_ref()))
    }

    pub fn order(&self, q: u32) -> u128 {
        (q as u128).pow(self.free_roots().len() as u32)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.support().is_subset(self.free_roots())
    }
}

/// Exhaustively computed structure of a pattern subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupStructure {
    pub order: u128,
    /// Elements of the derived subgroup, ascending pack order.
    #[serde(skip)]
    pub derived: Vec<GroupElement>,
    /// Elements of the center, ascending pack order.
    #[serde(skip)]
    pub center: Vec<GroupElement>,
    pub derived_order: usize,
    pub center_order: usize,
    pub frattini_order: usize,
    pub exponent: u64,
}

impl SubgroupStructure {
    /// Special p-group: derived = center = Frattini subgroup, all elementary abelian.
    pub fn is_special(&self) -> bool {
        self.derived_order > 1
            && self.derived == self.center
            && self.frattini_order == self.derived_order
    }
}

impl UnipotentGroup {
    pub fn subgroup(
        &self,
        roots: RootSet,
        ctx: Option<&QuotientContext>,
    ) -> Result<PatternSubgroup, GroupError> {
        if !rootsys::is_closed(roots) {
            return Err(GroupError::NotClosed(roots));
        }
        Ok(PatternSubgroup {
            roots,
            ctx: ctx.copied(),
        })
    }

    fn guard(&self, p: &PatternSubgroup, limit: u128) -> Result<(), GroupError> {
        let size = p.order(self.q());
        if size > limit {
            return Err(GroupError::TooLarge { size, limit });
        }
        Ok(())
    }

    /// All elements of `p`, each once, in ascending pack order.
    pub fn enumerate(
        &self,
        p: &PatternSubgroup,
    ) -> Result<impl Iterator<Item = GroupElement>, GroupError> {
        self.guard(p, DEFAULT_ENUMERATION_LIMIT)?;
        Ok(enumerate_support(p.free_roots(), self.q()))
    }

    /// Root-element generators `x_γ(t)`, `γ` free in `p`, `t ≠ 0`.
    pub fn generators(&self, p: &PatternSubgroup) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for i in p.free_roots().iter() {
            for t in 1..self.q() as u8 {
                gens.push(self.root_element_raw(i, t));
            }
        }
        gens
    }

    /// Smallest subgroup containing `seed` and closed under conjugation by
    /// `normalizers`.
    fn normal_closure(
        &self,
        seed: Vec<GroupElement>,
        normalizers: &[GroupElement],
        killed: u16,
    ) -> HashSet<GroupElement> {
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut set: HashSet<GroupElement> = HashSet::from([GroupElement::IDENTITY]);
        let mut pending = seed;
        while !pending.is_empty() {
            let mut added = false;
            for g in pending.drain(..) {
                if !set.contains(&g) {
                    gens.push(g);
                    added = true;
                }
            }
            if !added {
                break;
            }
            // multiplicative closure from the current generators
            let mut frontier: Vec<GroupElement> = set.iter().copied().collect();
            while let Some(h) = frontier.pop() {
                for g in &gens {
                    let x = self.mul_raw(&h, g, killed);
                    if set.insert(x) {
                        frontier.push(x);
                    }
                }
            }
            for g in &gens {
                for n in normalizers {
                    let c = self.conj_raw(g, n, killed);
                    if !set.contains(&c) {
                        pending.push(c);
                    }
                }
            }
        }
        set
    }

    fn derived_set(&self, p: &PatternSubgroup) -> HashSet<GroupElement> {
        let killed = killed_of(p.context()).bits();
        let gens = self.generators(p);
        let mut comms = Vec::new();
        for a in &gens {
            for b in &gens {
                let ai = self.inv_raw(a, killed);
                let bi = self.inv_raw(b, killed);
                let c = self.mul_raw(
                    &self.mul_raw(&ai, &bi, killed),
                    &self.mul_raw(a, b, killed),
                    killed,
                );
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(comms, &gens, killed)
    }

    /// Elements of `[P, P]` in ascending pack order, generated from
    /// commutators of root elements without enumerating `P`.
    pub fn derived_subgroup(&self, p: &PatternSubgroup) -> Result<Vec<GroupElement>, GroupError> {
        self.guard(p, DEFAULT_ENUMERATION_LIMIT)?;
        let mut d: Vec<GroupElement> = self.derived_set(p).into_iter().collect();
        d.sort_by_key(|g| self.pack_unchecked(g));
        Ok(d)
    }

    /// Derived subgroup, center, Frattini order and exponent of `p`, by
    /// exhaustive generation.
    pub fn derived_and_center(&self, p: &PatternSubgroup) -> Result<SubgroupStructure, GroupError> {
        self.guard(p, DEFAULT_ENUMERATION_LIMIT)?;
        let killed = killed_of(p.context()).bits();
        let gens = self.generators(p);
        let derived_set = self.derived_set(p);

        let mut center = Vec::new();
        let mut powers = Vec::new();
        let mut exponent = 1u64;
        let prime = self.p() as u64;
        for g in enumerate_support(p.free_roots(), self.q()) {
            if gens.iter().all(|h| self.conj_raw(&g, h, killed) == g) {
                center.push(g);
            }
            let mut order = 1u64;
            let mut x = g;
            while !x.is_identity() {
                x = self.mul_raw(&x, &g, killed);
                order += 1;
            }
            exponent = exponent.max(order);
            // g^p
            let mut gp = GroupElement::IDENTITY;
            for _ in 0..prime {
                gp = self.mul_raw(&gp, &g, killed);
            }
            if !gp.is_identity() && !derived_set.contains(&gp) {
                powers.push(gp);
            }
        }
        powers.sort_unstable();
        powers.dedup();
        let mut seed: Vec<GroupElement> = derived_set.iter().copied().collect();
        seed.extend(powers);
        let frattini_order = self.normal_closure(seed, &[], killed).len();

        let mut derived: Vec<GroupElement> = derived_set.into_iter().collect();
        derived.sort_by_key(|g| self.pack_unchecked(g));
        center.sort_by_key(|g| self.pack_unchecked(g));
        Ok(SubgroupStructure {
            order: p.order(self.q()),
            derived_order: derived.len(),
            center_order: center.len(),
            derived,
            center,
            frattini_order,
            exponent,
        })
    }
}

/// Elements supported on `free` in ascending pack order.
pub(crate) fn enumerate_support(free: RootSet, q: u32) -> impl Iterator<Item = GroupElement> {
    let slots: Vec<usize> = free.iter().map(|i| i - 1).collect();
    let total = (q as u128).pow(slots.len() as u32);
    let q = q as u8;
    let mut cur = GroupElement::IDENTITY;
    let mut emitted: u128 = 0;
    std::iter::from_fn(move || {
        if emitted == total {
            return None;
        }
        let out = cur;
        emitted += 1;
        for &s in &slots {
            cur.d[s] += 1;
            if cur.d[s] < q {
                break;
            }
            cur.d[s] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> RootSet {
        v.iter().copied().collect()
    }

    #[test]
    fn subgroup_examples() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let h = g.subgroup(rootsys::hook(12).unwrap(), None).unwrap();
        assert_eq!(h.order(2), 512);
        assert_eq!(g.subgroup(set(&[12]), None).unwrap().order(2), 2);
        assert!(matches!(
            g.subgroup(set(&[1, 3]), None),
            Err(GroupError::NotClosed(_))
        ));
    }

    #[test]
    fn enumerate_examples() {
        let g3 = UnipotentGroup::with_order(3).unwrap();
        let z = g3.subgroup(set(&[12]), None).unwrap();
        assert_eq!(g3.enumerate(&z).unwrap().count(), 3);

        let g = UnipotentGroup::with_order(2).unwrap();
        let u = g.subgroup(RootSet::ALL, None).unwrap();
        let codes: Vec<u64> = g
            .enumerate(&u)
            .unwrap()
            .map(|e| g.pack(&e).unwrap())
            .collect();
        assert_eq!(codes, (0..4096).collect::<Vec<_>>());
        let v = g.subgroup(rootsys::v_alpha(12).unwrap(), None).unwrap();
        assert_eq!(g.enumerate(&v).unwrap().count(), 256);
    }

    #[test]
    fn structure_of_hook_subgroups() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let h = g.subgroup(rootsys::hook(12).unwrap(), None).unwrap();
        let s = g.derived_and_center(&h).unwrap();
        assert_eq!(s.order, 512);
        assert_eq!(
            s.derived,
            vec![GroupElement::IDENTITY, g.root_element_raw(12, 1)]
        );
        assert!(s.is_special());

        let z = g.subgroup(set(&[12]), None).unwrap();
        let s = g.derived_and_center(&z).unwrap();
        assert_eq!(s.derived_order, 1);
        assert_eq!(s.center_order, 2);

        let g3 = UnipotentGroup::with_order(3).unwrap();
        let h5 = g3.subgroup(rootsys::hook(5).unwrap(), None).unwrap();
        let s = g3.derived_and_center(&h5).unwrap();
        assert_eq!(s.order, 27);
        assert_eq!(s.center_order, 3);
        assert!(s.is_special());
        assert_eq!(s.exponent, 3);
    }

    #[test]
    fn size_guard() {
        let g = UnipotentGroup::with_order(5).unwrap();
        let u = g.subgroup(RootSet::ALL, None).unwrap();
        assert!(matches!(g.enumerate(&u), Err(GroupError::TooLarge { .. })));
    }
}
