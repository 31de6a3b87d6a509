use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::classes::ClassData;
use crate::gf::{canonicalize, CycNumber, FieldElement};
use crate::rootsys::{RootSet, NUM_ROOTS};

use super::{CharError, LinearCharacter};

/// A class function with values in Z[ζ_p], stored as canonical integer
/// coordinates (`width = max(p-1, 1)` integers per class).
#[derive(Clone)]
pub struct ClassFunction {
    ambient: Arc<ClassData>,
    p: usize,
    values: Vec<i64>,
    label: Option<String>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassFunction")
            .field("label", &self.label)
            .field("q", &self.ambient.q())
            .field("killed", &self.ambient.killed())
            .field("degree", &self.degree())
            .finish()
    }
}

pub(crate) fn width(p: usize) -> usize {
    (p - 1).max(1)
}

/// Appends the canonical coordinates of a cyclic vector of length `p`.
pub(crate) fn push_canonical(out: &mut Vec<i64>, cyc: &[i64]) {
    out.extend(canonicalize(cyc));
}

/// Cyclic coordinate `i` of a canonical vector (`i < p`).
#[inline]
fn cyc_at(canon: &[i64], i: usize) -> i64 {
    canon.get(i).copied().unwrap_or(0)
}

fn same_group(a: &ClassData, b: &ClassData) -> bool {
    let (fa, fb) = (a.group().field(), b.group().field());
    fa.q() == fb.q() && fa.modulus() == fb.modulus()
}

impl ClassFunction {
    pub(crate) fn from_canonical(ambient: Arc<ClassData>, values: Vec<i64>) -> Self {
        let p = ambient.group().p() as usize;
        debug_assert_eq!(values.len(), ambient.count() * width(p));
        ClassFunction {
            ambient,
            p,
            values,
            label: None,
        }
    }

    pub fn trivial(ambient: Arc<ClassData>) -> Self {
        let p = ambient.group().p() as usize;
        let w = width(p);
        let mut values = vec![0; ambient.count() * w];
        for c in 0..ambient.count() {
            values[c * w] = 1;
        }
        Self::from_canonical(ambient, values)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ambient(&self) -> &Arc<ClassData> {
        &self.ambient
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    fn width(&self) -> usize {
        width(self.p)
    }

    /// Canonical integer coordinates of the value on class `c`.
    pub fn raw_value(&self, c: usize) -> &[i64] {
        let w = self.width();
        &self.values[c * w..(c + 1) * w]
    }

    /// All values, class after class; equal class functions on the same
    /// ambient have equal raw vectors.
    pub fn raw_values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, c: usize) -> CycNumber {
        let coeffs = self
            .raw_value(c)
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        CycNumber::from_coefficients(self.p as u32, coeffs)
    }

    pub fn values(&self) -> Vec<CycNumber> {
        (0..self.ambient.count()).map(|c| self.value(c)).collect()
    }

    /// Value at the identity (class 0).
    pub fn degree(&self) -> i64 {
        self.values[0]
    }

    fn check_ambient(&self, other: &ClassFunction) -> Result<(), CharError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient)
            || (self.ambient.killed() == other.ambient.killed()
                && same_group(&self.ambient, &other.ambient))
        {
            Ok(())
        } else {
            Err(CharError::AmbientMismatch)
        }
    }

    /// `Σ_c |c| χ(c) conj(ψ(c))` as a cyclic vector of length `p`.
    fn weighted_sum(&self, other: &ClassFunction) -> Vec<i128> {
        let (p, w) = (self.p, self.width());
        let mut acc = vec![0i128; p];
        for (c, &size) in self.ambient.sizes().iter().enumerate() {
            let a = &self.values[c * w..(c + 1) * w];
            let b = &other.values[c * w..(c + 1) * w];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let sa = size as i128 * ai as i128;
                for (j, &bj) in b.iter().enumerate() {
                    acc[(i + p - j) % p] += sa * bj as i128;
                }
            }
        }
        acc
    }

    /// `(χ, ψ) = |G|^-1 Σ_g χ(g) conj(ψ(g))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycNumber, CharError> {
        self.check_ambient(other)?;
        let acc = canonicalize(&self.weighted_sum(other));
        let order = BigInt::from(self.ambient.group_order());
        let coeffs = acc
            .into_iter()
            .map(|v| BigRational::new(BigInt::from(v), order.clone()))
            .collect();
        Ok(CycNumber::from_coefficients(self.p as u32, coeffs))
    }

    /// Whether `(χ, ψ)` equals the integer `n`, without building rationals.
    pub(crate) fn inner_product_is(&self, other: &ClassFunction, n: i128) -> bool {
        let acc = canonicalize(&self.weighted_sum(other));
        let order = self.ambient.group_order() as i128;
        acc[0] == n * order && acc[1..].iter().all(|&v| v == 0)
    }

    /// Norm one. For characters this is irreducibility.
    pub fn is_irreducible(&self) -> bool {
        self.inner_product_is(self, 1)
    }

    /// Roots `α` with `χ(x_α(t)) = χ(1)` for all `t`.
    pub fn kernel_roots(&self) -> RootSet {
        let g = self.ambient.group();
        let one = self.raw_value(0);
        (1..=NUM_ROOTS)
            .filter(|&a| {
                (1..g.q() as u8).all(|t| {
                    let c = self.ambient.class_of(&g.root_element_raw(a, t));
                    self.raw_value(c) == one
                })
            })
            .collect()
    }

    /// Multiplies the canonical vector `v` by `ζ^k`.
    fn rotate(&self, v: &[i64], k: usize) -> Vec<i64> {
        let p = self.p;
        let mut cyc = vec![0i64; p];
        for i in 0..p {
            cyc[(i + k) % p] = cyc_at(v, i);
        }
        canonicalize(&cyc)
    }

    /// Pointwise product with a linear character of the whole ambient group.
    pub fn tensor_linear(&self, beta: &LinearCharacter) -> Result<ClassFunction, CharError> {
        let killed = self.ambient.killed();
        if beta.killed() != killed
            || beta.domain().union(killed) != RootSet::ALL
            || beta.field().q() != self.ambient.q()
        {
            return Err(CharError::NotGlobal);
        }
        let mut values = Vec::with_capacity(self.values.len());
        for (c, rep) in self.ambient.reps().iter().enumerate() {
            let k = beta.exponent_raw(&rep.indices());
            values.extend(self.rotate(self.raw_value(c), k));
        }
        Ok(ClassFunction {
            ambient: self.ambient.clone(),
            p: self.p,
            values,
            label: self.label.clone(),
        })
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> ClassFunction {
        let p = self.p;
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..self.ambient.count() {
            let v = self.raw_value(c);
            let mut cyc = vec![0i64; p];
            for i in 0..p {
                cyc[(p - i) % p] = cyc_at(v, i);
            }
            values.extend(canonicalize(&cyc));
        }
        ClassFunction {
            ambient: self.ambient.clone(),
            p,
            values,
            label: self.label.clone(),
        }
    }

    /// Pointwise sum; used to build reducible test characters.
    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharError> {
        self.check_ambient(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ClassFunction::from_canonical(self.ambient.clone(), values))
    }

    /// Inflates a class function of `U/N` to `target`, a quotient by a
    /// smaller normal subgroup (or U itself).
    pub fn inflate(&self, target: &Arc<ClassData>) -> Result<ClassFunction, CharError> {
        if !same_group(&self.ambient, target) || !target.killed().is_subset(self.ambient.killed()) {
            return Err(CharError::AmbientMismatch);
        }
        let mut values = Vec::with_capacity(target.count() * self.width());
        for rep in target.reps() {
            // class_of ignores the coordinates killed in the source quotient
            let c = self.ambient.class_of(rep);
            values.extend_from_slice(self.raw_value(c));
        }
        Ok(ClassFunction {
            ambient: target.clone(),
            p: self.p,
            values,
            label: self.label.clone(),
        })
    }

    /// Decomposes `χ|_{X_α}` into the characters `t ↦ φ(s t)`; returns the
    /// nonzero multiplicities in field order.
    pub fn restrict_to_root_subgroup(
        &self,
        alpha: usize,
    ) -> Result<Vec<(FieldElement, i64)>, CharError> {
        if !(1..=NUM_ROOTS).contains(&alpha) {
            return Err(CharError::BadParameter {
                root: alpha,
                reason: "root index outside 1..=12",
            });
        }
        let g = self.ambient.group();
        let f = g.field();
        let (p, q) = (self.p, g.q());
        let vals: Vec<&[i64]> = (0..q as u8)
            .map(|t| self.raw_value(self.ambient.class_of(&g.root_element_raw(alpha, t))))
            .collect();
        let mut out = Vec::new();
        for s in 0..q as u8 {
            let mut acc = vec![0i64; p];
            for (t, v) in vals.iter().enumerate() {
                let k = f.trace_raw(f.mul_raw(s, t as u8)) as usize;
                for i in 0..p {
                    acc[(i + p - k) % p] += cyc_at(v, i);
                }
            }
            let canon = canonicalize(&acc);
            if canon[1..].iter().any(|&v| v != 0) || canon[0] % q as i64 != 0 {
                return Err(CharError::NotACharacter);
            }
            let m = canon[0] / q as i64;
            if m != 0 {
                out.push((f.wrap(s), m));
            }
        }
        Ok(out)
    }
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

    #[test]
    fn trivial_character_basics() {
        let a = cd(3, &[11, 12]);
        let t = ClassFunction::trivial(a.clone());
        assert!(t.inner_product(&t).unwrap().is_one());
        assert!(t.is_irreducible());
        assert_eq!(t.kernel_roots(), RootSet::ALL);
        assert_eq!(t.degree(), 1);
        let r = t.restrict_to_root_subgroup(3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].0.index(), r[0].1), (0, 1));
        let two = t.add(&t).unwrap();
        assert!(!two.is_irreducible());
        assert!(
            two.inner_product(&t).unwrap().as_rational().unwrap()
                == BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn inflation_keeps_degree_and_kernel() {
        let small = cd(2, &[8, 9, 10, 11, 12]);
        let big = cd(2, &[]);
        let t = ClassFunction::trivial(small.clone()).inflate(&big).unwrap();
        assert_eq!(t.values, ClassFunction::trivial(big.clone()).values);
        assert!(ClassFunction::trivial(big).inflate(&small).is_err());
    }

    #[test]
    fn linear_tensor_and_conjugate() {
        let a = cd(3, &[5, 6, 7, 8, 9, 10, 11, 12]);
        let g = a.group().clone();
        let u = g.subgroup(RootSet::ALL, a.context()).unwrap();
        let f = g.field();
        let beta =
            LinearCharacter::new(&g, &u, &[(1, f.one()), (4, f.element(2).unwrap())]).unwrap();
        let t = ClassFunction::trivial(a.clone());
        let b = t.tensor_linear(&beta).unwrap();
        assert!(b.is_irreducible());
        assert!(b.inner_product(&t).unwrap().is_zero());
        let back = b.tensor_linear(&beta.conjugate()).unwrap();
        assert_eq!(back.values, t.values);
        assert_eq!(
            b.conjugate().values,
            t.tensor_linear(&beta.conjugate()).unwrap().values
        );
        assert_eq!(b.kernel_roots(), (2..=12).filter(|&i| i != 4).collect());
        let r = b.restrict_to_root_subgroup(4).unwrap();
        assert_eq!(
            r.iter().map(|(s, m)| (s.index(), *m)).collect::<Vec<_>>(),
            vec![(2, 1)]
        );
    }
}
