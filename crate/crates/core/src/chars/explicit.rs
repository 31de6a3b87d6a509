use std::collections::HashMap;

use crate::gf::CycNumber;
use crate::rootsys::RootSet;
use crate::ugroup::{subgroup::enumerate_support, GroupElement, UnipotentGroup};

use super::{CharError, LinearCharacter};

/// A subgroup given by its elements, optionally carrying a linear character
/// as exponents `k` with value `ζ_p^k`.
#[derive(Clone, Debug)]
pub struct ExplicitSubgroup {
    killed: RootSet,
    p: u32,
    gens: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    exponents: Option<Vec<u8>>,
}

impl ExplicitSubgroup {
    /// Closure of `gens` in `U/X_killed`.  With `gen_exponents`, the
    /// character determined by its values on the generators is propagated
    /// and checked to be well defined.
    pub fn from_generators(
        group: &UnipotentGroup,
        killed: RootSet,
        gens: &[GroupElement],
        gen_exponents: Option<&[u8]>,
    ) -> Result<Self, CharError> {
        let p = group.p();
        let kbits = killed.bits();
        let gens: Vec<GroupElement> = gens
            .iter()
            .map(|g| {
                let mut d = g.indices();
                for i in killed.iter() {
                    d[i - 1] = 0;
                }
                GroupElement::from_indices(d)
            })
            .collect();
        if let Some(e) = gen_exponents {
            assert_eq!(e.len(), gens.len(), "one exponent per generator");
        }
        let mut index: HashMap<GroupElement, usize> = HashMap::from([(GroupElement::IDENTITY, 0)]);
        let mut elements = vec![GroupElement::IDENTITY];
        let mut exps = vec![0u8];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next];
            let ex = exps[next];
            next += 1;
            for (j, g) in gens.iter().enumerate() {
                let y = group.mul_raw(&x, g, kbits);
                let ey = gen_exponents.map_or(0, |e| ((ex as u32 + e[j] as u32) % p) as u8);
                match index.get(&y) {
                    Some(&i) => {
                        if exps[i] != ey {
                            return Err(CharError::NotHomomorphism);
                        }
                    }
                    None => {
                        index.insert(y, elements.len());
                        elements.push(y);
                        exps.push(ey);
                    }
                }
            }
        }
        Self::sorted(killed, p, gens, elements, gen_exponents.map(|_| exps))
    }

    /// The domain of a linear character of a pattern subgroup, with its values.
    pub fn from_linear(
        lambda: &LinearCharacter,
        group: &UnipotentGroup,
    ) -> Result<Self, CharError> {
        let q = group.q();
        let elements: Vec<GroupElement> = enumerate_support(lambda.domain(), q).collect();
        let exps = elements
            .iter()
            .map(|e| lambda.exponent_raw(&e.indices()) as u8)
            .collect();
        let gens = lambda
            .domain()
            .iter()
            .flat_map(|i| (1..q as u8).map(move |t| group.root_element_raw(i, t)))
            .collect();
        Self::sorted(lambda.killed(), group.p(), gens, elements, Some(exps))
    }

    fn sorted(
        killed: RootSet,
        p: u32,
        gens: Vec<GroupElement>,
        elements: Vec<GroupElement>,
        exps: Option<Vec<u8>>,
    ) -> Result<Self, CharError> {
        let mut order: Vec<usize> = (0..elements.len()).collect();
        // reversed coordinates give pack order
        order.sort_by_key(|&i| {
            let mut d = elements[i].indices();
            d.reverse();
            d
        });
        let elements: Vec<GroupElement> = order.iter().map(|&i| elements[i]).collect();
        let exponents = exps.map(|e| order.iter().map(|&i| e[i]).collect());
        let index = elements.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        Ok(ExplicitSubgroup {
            killed,
            p,
            gens,
            elements,
            index,
            exponents,
        })
    }

    /// Attaches character exponents, checking multiplicativity against the
    /// generators (which suffices since every element is a word in them).
    pub fn with_exponents(
        &self,
        group: &UnipotentGroup,
        exponents: Vec<u8>,
    ) -> Result<Self, CharError> {
        if exponents.len() != self.elements.len() {
            return Err(CharError::NotHomomorphism);
        }
        let kbits = self.killed.bits();
        for (i, x) in self.elements.iter().enumerate() {
            for g in &self.gens {
                let y = self.index[&group.mul_raw(x, g, kbits)];
                let eg = exponents[self.index[g]];
                if exponents[y] as u32 != (exponents[i] as u32 + eg as u32) % self.p {
                    return Err(CharError::NotHomomorphism);
                }
            }
        }
        let mut s = self.clone();
        s.exponents = Some(exponents);
        Ok(s)
    }

    pub fn killed(&self) -> RootSet {
        self.killed
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in ascending pack order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn exponents(&self) -> Option<&[u8]> {
        self.exponents.as_deref()
    }

    pub fn value(&self, g: &GroupElement) -> Option<CycNumber> {
        let i = self.position(g)?;
        let k = self.exponents.as_ref()?[i];
        Some(CycNumber::zeta_pow(self.p, k as i64))
    }
}

/// The extensions of `λ` (a linear character of a pattern subgroup `A`) to
/// a `λ`-invariant group `T ⊇ A` of index 2.  With `x₀` the first element of
/// `T \ A`, an extension is fixed by `μ(x₀)`, which must square to
/// `λ(x₀²)`; both roots are returned, smallest exponent first.
pub fn extend_to_inertia(
    lambda: &LinearCharacter,
    inertia: &ExplicitSubgroup,
    group: &UnipotentGroup,
) -> Result<Vec<ExplicitSubgroup>, CharError> {
    let kbits = inertia.killed().bits();
    if inertia.killed() != lambda.killed() {
        return Err(CharError::AmbientMismatch);
    }
    let a_order = (group.q() as usize).pow(lambda.domain().len() as u32);
    let inside: Vec<bool> = inertia
        .elements()
        .iter()
        .map(|g| lambda.contains(g))
        .collect();
    if inside.iter().filter(|&&b| b).count() != a_order {
        return Err(CharError::NotContained(lambda.domain()));
    }
    if inertia.order() != 2 * a_order {
        return Err(CharError::BadIndex((inertia.order() / a_order) as u64));
    }
    let p = group.p() as usize;
    if p != 2 {
        return Err(CharError::BadIndex(2));
    }
    // invariance under conjugation by the generators of T
    let a_elems: Vec<&GroupElement> = inertia
        .elements()
        .iter()
        .zip(&inside)
        .filter_map(|(g, &b)| b.then_some(g))
        .collect();
    for h in inertia.generators() {
        for a in &a_elems {
            let c = group.conj_raw(a, h, kbits);
            if !lambda.contains(&c)
                || lambda.exponent_raw(&c.indices()) != lambda.exponent_raw(&a.indices())
            {
                return Err(CharError::NotInvariant);
            }
        }
    }
    let x0_pos = inside.iter().position(|&b| !b).expect("index 2");
    let x0 = inertia.elements()[x0_pos];
    let x0_inv = group.inv_raw(&x0, kbits);
    let sq = group.mul_raw(&x0, &x0, kbits);
    let e = lambda.exponent_raw(&sq.indices());
    // 2f ≡ e (mod 2) needs e = 0; then f ∈ {0, 1}
    if !e.is_multiple_of(2) {
        return Err(CharError::NoSquareRoot);
    }
    let mut out = Vec::with_capacity(2);
    for f in 0..2u8 {
        let exps: Vec<u8> = inertia
            .elements()
            .iter()
            .zip(&inside)
            .map(|(g, &b)| {
                if b {
                    lambda.exponent_raw(&g.indices()) as u8
                } else {
                    let a = group.mul_raw(g, &x0_inv, kbits);
                    ((lambda.exponent_raw(&a.indices()) as u8) + f) % 2
                }
            })
            .collect();
        out.push(inertia.with_exponents(group, exps)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_root_elements_is_the_pattern_group() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let gens: Vec<_> = [1, 3].iter().map(|&i| g.root_element_raw(i, 1)).collect();
        let s = ExplicitSubgroup::from_generators(&g, RootSet::EMPTY, &gens, None).unwrap();
        // <x1, x3> = X1 X3 X5
        assert_eq!(s.order(), 8);
        assert!(s.contains(&g.root_element_raw(5, 1)));
        assert_eq!(s.elements()[0], GroupElement::IDENTITY);
    }

    #[test]
    fn inconsistent_generator_values_are_rejected() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let x1 = g.root_element_raw(1, 1);
        // x1 has order 2, so ζ on it is fine, but x1 twice with different values is not
        let r = ExplicitSubgroup::from_generators(&g, RootSet::EMPTY, &[x1, x1], Some(&[0, 1]));
        assert_eq!(r.unwrap_err(), CharError::NotHomomorphism);
        let ok = ExplicitSubgroup::from_generators(&g, RootSet::EMPTY, &[x1], Some(&[1])).unwrap();
        assert_eq!(ok.value(&x1).unwrap(), CycNumber::from_integer(2, -1));
    }
}
