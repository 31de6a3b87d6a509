use std::sync::Arc;

use crate::gf::{CycNumber, FieldElement, FieldSpec};
use crate::rootsys::{self, RootSet, NUM_ROOTS};
use crate::ugroup::{GroupElement, PatternSubgroup, UnipotentGroup};

use super::CharError;

/// `λ(g) = Π_γ φ(s_γ d_γ(g))` on a pattern subgroup, possibly of a quotient.
///
/// The map is a homomorphism exactly when `s_γ = 0` on every root of the
/// domain that is a sum of two domain roots: off those coordinates
/// multiplication is plain addition.
#[derive(Clone)]
pub struct LinearCharacter {
    field: Arc<FieldSpec>,
    domain: RootSet,
    killed: RootSet,
    params: [u8; NUM_ROOTS],
    support: Vec<usize>,
}

impl std::fmt::Debug for LinearCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearCharacter")
            .field("domain", &self.domain)
            .field("killed", &self.killed)
            .field("params", &self.params)
            .finish()
    }
}

impl PartialEq for LinearCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.domain == o.domain
            && self.killed == o.killed
            && self.params == o.params
            && self.field.q() == o.field.q()
            && self.field.modulus() == o.field.modulus()
    }
}

impl LinearCharacter {
    /// Validated character of `subgroup` with `s_γ` given by `params`
    /// (1-based roots; unspecified roots get 0).
    pub fn new(
        group: &UnipotentGroup,
        subgroup: &PatternSubgroup,
        params: &[(usize, FieldElement)],
    ) -> Result<Self, CharError> {
        let f = group.field();
        let mut raw = [0u8; NUM_ROOTS];
        for &(i, s) in params {
            if !(1..=NUM_ROOTS).contains(&i) {
                return Err(CharError::BadParameter {
                    root: i,
                    reason: "root index outside 1..=12",
                });
            }
            if !f.owns(s) {
                return Err(crate::gf::GfError::ForeignElement.into());
            }
            raw[i - 1] = s.index();
        }
        let killed = subgroup.context().map_or(RootSet::EMPTY, |c| c.killed());
        Self::from_raw(group.field_arc(), subgroup.roots(), killed, raw)
    }

    pub(crate) fn from_raw(
        field: Arc<FieldSpec>,
        domain: RootSet,
        killed: RootSet,
        params: [u8; NUM_ROOTS],
    ) -> Result<Self, CharError> {
        let live = domain.difference(killed);
        let derived = rootsys::sums_within(domain.union(killed)).difference(killed);
        let mut support = Vec::new();
        for (k, &s) in params.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let root = k + 1;
            if s as u32 >= field.q() {
                return Err(CharError::BadParameter {
                    root,
                    reason: "not a field element",
                });
            }
            if !live.contains(root) {
                return Err(CharError::BadParameter {
                    root,
                    reason: "root is not a coordinate of the domain",
                });
            }
            if derived.contains(root) {
                return Err(CharError::BadParameter {
                    root,
                    reason: "root lies in the derived subgroup of the domain",
                });
            }
            support.push(k);
        }
        Ok(LinearCharacter {
            field,
            domain: live,
            killed,
            params,
            support,
        })
    }

    /// Root set of the domain, killed roots removed.
    pub fn domain(&self) -> RootSet {
        self.domain
    }

    pub fn killed(&self) -> RootSet {
        self.killed
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Field index of `s_i` (1-based root).
    pub fn param(&self, i: usize) -> u8 {
        self.params[i - 1]
    }

    pub fn params(&self) -> [u8; NUM_ROOTS] {
        self.params
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.support().difference(self.killed).is_subset(self.domain)
    }

    /// `k` with `λ(g) = ζ_p^k`, assuming `g` lies in the domain.
    #[inline]
    pub(crate) fn exponent_raw(&self, d: &[u8; NUM_ROOTS]) -> usize {
        let f = &*self.field;
        let p = f.p() as usize;
        let mut k = 0usize;
        for &i in &self.support {
            k += f.trace_raw(f.mul_raw(self.params[i], d[i])) as usize;
        }
        k % p
    }

    pub fn exponent(&self, g: &GroupElement) -> Result<usize, CharError> {
        if !self.contains(g) {
            return Err(CharError::NotContained(g.support()));
        }
        Ok(self.exponent_raw(&g.indices()))
    }

    pub fn value(&self, g: &GroupElement) -> Result<CycNumber, CharError> {
        let k = self.exponent(g)?;
        Ok(CycNumber::zeta_pow(self.field.p(), k as i64))
    }

    /// The complex conjugate character, `s ↦ -s`.
    pub fn conjugate(&self) -> LinearCharacter {
        let mut c = self.clone();
        for s in c.params.iter_mut() {
            *s = self.field.neg_raw(*s);
        }
        c
    }
}
