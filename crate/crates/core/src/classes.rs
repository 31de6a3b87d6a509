//! Conjugacy classes of U(q) and of its quotients by normal pattern subgroups.
//!
//! Elements are addressed by a dense local index: the mixed-radix number formed
//! by the coordinates that are not killed, lowest root least significant.  This
//! order agrees with pack order, so the first element met in a linear scan of an
//! orbit is its minimal-code element and becomes the class representative.

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{RootSet, NUM_ROOTS};
use crate::ugroup::{GroupElement, GroupError, QuotientContext, UnipotentGroup};

/// State counts above this need an explicit opt-in.
pub const LARGE_STATE_COUNT: u128 = 1 << 25;
/// State counts above this are refused outright.
pub const MAX_STATE_COUNT: u128 = 300_000_000;

const UNSEEN: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("{states} states exceed the default limit of {limit}; pass allow_large to proceed")]
    NeedsOptIn { states: u128, limit: u128 },
    #[error("{states} states exceed the hard limit of {limit}")]
    TooLarge { states: u128, limit: u128 },
    #[error("q = {q} does not have the requested parity")]
    ParityMismatch { q: u64 },
    #[error("class id {0} out of range")]
    BadClass(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(q: u64) -> Parity {
        if q.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Number of conjugacy classes of U(q) as a polynomial in q.
pub fn class_count_polynomial(q: u64, parity: Parity) -> Result<i128, ClassError> {
    if q < 2 || Parity::of(q) != parity {
        return Err(ClassError::ParityMismatch { q });
    }
    let q = q as i128;
    let p = |c: [i128; 6]| c.iter().rev().fold(0i128, |acc, &a| acc * q + a);
    Ok(match parity {
        Parity::Odd => p([0, 2, -4, -4, 5, 2]),
        Parity::Even => p([3, -10, 14, -16, 8, 2]),
    })
}

/// Conjugacy classes of a (quotient of) U(q).
#[derive(Debug, Clone)]
pub struct ClassData {
    group: UnipotentGroup,
    ctx: Option<QuotientContext>,
    /// 0-based coordinate positions that are not killed, ascending.
    slots: Vec<usize>,
    /// `q^k` for each slot position `k`.
    weights: Vec<u64>,
    reps: Vec<GroupElement>,
    sizes: Vec<u64>,
    ids: Vec<u32>,
}

/// One row of the JSON/TSV class listing.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub rep: Vec<u8>,
    pub size: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassListing {
    pub q: u32,
    #[serde(skip_serializing_if = "no_quotient")]
    pub quotient: RootSet,
    pub count: usize,
    pub classes: Vec<ClassRow>,
}

fn no_quotient(k: &RootSet) -> bool {
    k.is_empty()
}

fn check_states(states: u128, allow_large: bool) -> Result<(), ClassError> {
    if states > MAX_STATE_COUNT {
        return Err(ClassError::TooLarge {
            states,
            limit: MAX_STATE_COUNT,
        });
    }
    if states > LARGE_STATE_COUNT && !allow_large {
        return Err(ClassError::NeedsOptIn {
            states,
            limit: LARGE_STATE_COUNT,
        });
    }
    Ok(())
}

/// Partitions the group into orbits under conjugation by the simple root
/// elements.  Since `t ↦ x_i(t)` is additive, conjugating by `x_i(b)` for `b`
/// running over an F_p-basis of F_q already generates all of U.
pub fn conjugacy_classes(
    group: &UnipotentGroup,
    ctx: Option<&QuotientContext>,
    allow_large: bool,
) -> Result<ClassData, ClassError> {
    let q = group.q();
    let killed = ctx.map_or(RootSet::EMPTY, |c| c.killed());
    let slots: Vec<usize> = killed.complement().iter().map(|i| i - 1).collect();
    let states = (q as u128).pow(slots.len() as u32);
    check_states(states, allow_large)?;

    let mut weights = Vec::with_capacity(slots.len());
    let mut w = 1u64;
    for _ in &slots {
        weights.push(w);
        w *= q as u64;
    }
    let mut cd = ClassData {
        group: group.clone(),
        ctx: ctx.copied(),
        slots,
        weights,
        reps: Vec::new(),
        sizes: Vec::new(),
        ids: vec![UNSEEN; states as usize],
    };

    let f = group.field();
    let basis: Vec<u8> = (0..f.n()).map(|k| f.p().pow(k) as u8).collect();
    let gens: Vec<(usize, u8)> = (0..4)
        .filter(|i| !killed.contains(i + 1))
        .flat_map(|i| basis.iter().map(move |&b| (i, b)))
        .collect();
    let kbits = killed.bits();

    // The BFS touches a compact visited bitset; ids are written once per orbit.
    let mut visited = vec![0u64; (states as usize).div_ceil(64)];
    let seen = |v: &[u64], l: u64| v[(l >> 6) as usize] & (1 << (l & 63)) != 0;
    let mut orbit: Vec<u64> = Vec::new();
    for start in 0..states as u64 {
        if seen(&visited, start) {
            continue;
        }
        let id = cd.reps.len() as u32;
        cd.reps.push(cd.element_at(start));
        visited[(start >> 6) as usize] |= 1 << (start & 63);
        orbit.clear();
        orbit.push(start);
        let mut next = 0;
        while next < orbit.len() {
            let e = cd.element_at(orbit[next]);
            next += 1;
            for &(i, t) in &gens {
                let c = group.conj_by_root_raw(&e, i, t, kbits);
                let lc = cd.local_index(&c);
                if !seen(&visited, lc) {
                    visited[(lc >> 6) as usize] |= 1 << (lc & 63);
                    orbit.push(lc);
                }
            }
        }
        for &l in &orbit {
            cd.ids[l as usize] = id;
        }
        cd.sizes.push(orbit.len() as u64);
    }
    Ok(cd)
}

impl ClassData {
    pub fn group(&self) -> &UnipotentGroup {
        &self.group
    }

    pub fn context(&self) -> Option<&QuotientContext> {
        self.ctx.as_ref()
    }

    pub fn killed(&self) -> RootSet {
        self.ctx.map_or(RootSet::EMPTY, |c| c.killed())
    }

    pub fn q(&self) -> u32 {
        self.group.q()
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// Order of the ambient (quotient) group.
    pub fn group_order(&self) -> u64 {
        self.ids.len() as u64
    }

    pub fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn rep(&self, id: usize) -> Result<&GroupElement, ClassError> {
        self.reps.get(id).ok_or(ClassError::BadClass(id))
    }

    pub fn size(&self, id: usize) -> Result<u64, ClassError> {
        self.sizes.get(id).copied().ok_or(ClassError::BadClass(id))
    }

    pub fn centralizer_order(&self, id: usize) -> Result<u64, ClassError> {
        Ok(self.group_order() / self.size(id)?)
    }

    #[inline]
    pub(crate) fn local_index(&self, g: &GroupElement) -> u64 {
        let d = g.indices();
        self.slots
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| d[s] as u64 * w)
            .sum()
    }

    #[inline]
    pub(crate) fn element_at(&self, mut l: u64) -> GroupElement {
        let q = self.q() as u64;
        let mut d = [0u8; NUM_ROOTS];
        for &s in &self.slots {
            d[s] = (l % q) as u8;
            l /= q;
        }
        GroupElement::from_indices(d)
    }

    /// Class id of `g`; killed coordinates are ignored.
    #[inline]
    pub fn class_of(&self, g: &GroupElement) -> usize {
        self.ids[self.local_index(g) as usize] as usize
    }

    /// Ids of the classes made of a single central element.
    pub fn central_classes(&self) -> Vec<usize> {
        (0..self.count()).filter(|&i| self.sizes[i] == 1).collect()
    }

    /// Number of classes of each size, ascending by size.
    pub fn size_histogram(&self) -> Vec<(u64, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for &s in &self.sizes {
            *h.entry(s).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }

    pub fn listing(&self) -> ClassListing {
        ClassListing {
            q: self.q(),
            quotient: self.killed(),
            count: self.count(),
            classes: self
                .reps
                .iter()
                .zip(&self.sizes)
                .map(|(r, &size)| ClassRow {
                    rep: r.indices().to_vec(),
                    size,
                })
                .collect(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tsize\trep\n");
        for (i, (r, s)) in self.reps.iter().zip(&self.sizes).enumerate() {
            out.push_str(&format!("{i}\t{s}\t{}\n", self.group.format_element(r)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_examples() {
        assert_eq!(class_count_polynomial(3, Parity::Odd).unwrap(), 753);
        assert_eq!(class_count_polynomial(2, Parity::Even).unwrap(), 103);
        assert_eq!(class_count_polynomial(5, Parity::Odd).unwrap(), 8785);
        assert_eq!(class_count_polynomial(4, Parity::Even).unwrap(), 3259);
        assert!(class_count_polynomial(4, Parity::Odd).is_err());
    }

    #[test]
    fn classes_at_q2() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let cd = conjugacy_classes(&g, None, false).unwrap();
        assert_eq!(cd.count(), 103);
        assert_eq!(cd.sizes().iter().sum::<u64>(), 4096);
        assert_eq!(cd.class_of(&g.identity()), 0);
        assert_eq!(cd.size(0).unwrap(), 1);
        assert_eq!(cd.centralizer_order(0).unwrap(), 4096);
        let z = g.root_element(12, g.field().one()).unwrap();
        let cz = cd.class_of(&z);
        assert_eq!(cd.size(cz).unwrap(), 1);
        assert_eq!(cd.centralizer_order(cz).unwrap(), 4096);
        assert_eq!(cd.central_classes().len(), 2);
        for s in cd.sizes() {
            assert!(s.is_power_of_two());
        }
    }

    #[test]
    fn abelianization_has_singleton_classes() {
        for q in [2, 3, 4, 5] {
            let g = UnipotentGroup::with_order(q).unwrap();
            let ctx = QuotientContext::new((5..=12).collect()).unwrap();
            let cd = conjugacy_classes(&g, Some(&ctx), false).unwrap();
            assert_eq!(cd.count(), (q as usize).pow(4));
            assert!(cd.sizes().iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn reps_are_minimal_codes() {
        let g = UnipotentGroup::with_order(3).unwrap();
        let ctx = QuotientContext::new([11, 12].into_iter().collect()).unwrap();
        let cd = conjugacy_classes(&g, Some(&ctx), false).unwrap();
        let mut min = vec![u64::MAX; cd.count()];
        for l in 0..cd.group_order() {
            let e = cd.element_at(l);
            let c = cd.class_of(&e);
            min[c] = min[c].min(g.pack(&e).unwrap());
        }
        for (r, m) in cd.reps().iter().zip(min) {
            assert_eq!(g.pack(r).unwrap(), m);
        }
    }

    #[test]
    fn guards() {
        let g = UnipotentGroup::with_order(5).unwrap();
        assert!(matches!(
            conjugacy_classes(&g, None, false),
            Err(ClassError::NeedsOptIn { .. })
        ));
        let g = UnipotentGroup::with_order(7).unwrap();
        assert!(matches!(
            conjugacy_classes(&g, None, true),
            Err(ClassError::TooLarge { .. })
        ));
    }
}
