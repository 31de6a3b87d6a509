//! The action of `K̄ = X_1 X_2 X_4` on the linear characters of the abelian
//! group `Ā = X_3 X_5 ... X_10` inside `U/X_11 X_12`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classes::Parity;
use crate::gf::FieldSpec;
use crate::rootsys::RootSet;
use crate::ugroup::{GroupElement, QuotientContext, UnipotentGroup};

use super::CharError;

/// Coordinates of `Ā`, in the order used for parameter vectors.
pub const A_ROOTS: [usize; 7] = [3, 5, 6, 7, 8, 9, 10];
/// Coordinates of `K̄`.
pub const K_ROOTS: [usize; 3] = [1, 2, 4];

pub(crate) fn quotient_context() -> QuotientContext {
    QuotientContext::new([11, 12].into_iter().collect()).expect("upper closed")
}

/// `K̄` acting on parameter vectors `s` of `Ā` by `λ_s ↦ λ_s(k · k⁻¹)`.
pub(crate) struct KAction {
    q: u32,
    field: FieldSpec,
    /// `(r, s, t)` field indices of each element of `K̄`, in pack order.
    pub ks: Vec<[u8; 3]>,
    /// `m[k][row][col]`: coordinate `row` of `k x_col(1) k⁻¹`.
    mats: Vec<[[u8; 7]; 7]>,
}

impl KAction {
    pub fn new(group: &UnipotentGroup) -> Self {
        let q = group.q();
        let ctx = quotient_context();
        let mut ks = Vec::new();
        let mut mats = Vec::new();
        for t in 0..q as u8 {
            for s in 0..q as u8 {
                for r in 0..q as u8 {
                    let k = Self::element_of([r, s, t]);
                    let kinv = group.inv(&k, Some(&ctx));
                    let mut m = [[0u8; 7]; 7];
                    for (col, &root) in A_ROOTS.iter().enumerate() {
                        let a = group.root_element_raw(root, 1);
                        let c = group.conj(&a, &kinv, Some(&ctx));
                        for (row, &r2) in A_ROOTS.iter().enumerate() {
                            m[row][col] = c.coord(r2);
                        }
                    }
                    ks.push([r, s, t]);
                    mats.push(m);
                }
            }
        }
        KAction {
            q,
            field: group.field().clone(),
            ks,
            mats,
        }
    }

    pub fn element_of(k: [u8; 3]) -> GroupElement {
        let mut d = [0u8; 12];
        for (i, &root) in K_ROOTS.iter().enumerate() {
            d[root - 1] = k[i];
        }
        GroupElement::from_indices(d)
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    /// `Mᵀ s`, the parameters of `a ↦ λ_s(k a k⁻¹)`.
    #[inline]
    pub fn act(&self, k: usize, s: &[u8; 7]) -> [u8; 7] {
        let f = &self.field;
        let m = &self.mats[k];
        let mut out = [0u8; 7];
        for (col, o) in out.iter_mut().enumerate() {
            let mut acc = 0u8;
            for (row, &sr) in s.iter().enumerate() {
                acc = f.add_raw(acc, f.mul_raw(sr, m[row][col]));
            }
            *o = acc;
        }
        out
    }

    /// Applies the matrix of `k` to an element's `Ā` coordinates.
    fn apply(&self, k: usize, a: &[u8; 7]) -> [u8; 7] {
        let f = &self.field;
        let m = &self.mats[k];
        let mut out = [0u8; 7];
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = 0u8;
            for (col, &ac) in a.iter().enumerate() {
                acc = f.add_raw(acc, f.mul_raw(m[row][col], ac));
            }
            *o = acc;
        }
        out
    }

    pub fn stabilizer(&self, s: &[u8; 7]) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.act(k, s) == *s).collect()
    }

    fn encode(&self, s: &[u8; 7]) -> usize {
        s.iter()
            .rev()
            .fold(0, |acc, &c| acc * self.q as usize + c as usize)
    }

    fn decode(&self, mut l: usize) -> [u8; 7] {
        let mut s = [0u8; 7];
        for c in s.iter_mut() {
            *c = (l % self.q as usize) as u8;
            l /= self.q as usize;
        }
        s
    }
}

/// The chosen `t_{c,d,e,f}`: the first field element outside the additive
/// subgroup `{d e f z² + c d z : z ∈ F_q}` (index 2 for even q).
pub fn t_cdef(field: &FieldSpec, c: u8, d: u8, e: u8, f: u8) -> Option<u8> {
    let m = |a, b| field.mul_raw(a, b);
    let def = m(m(d, e), f);
    let cd = m(c, d);
    let q = field.q();
    let mut hit = vec![false; q as usize];
    for z in 0..q as u8 {
        hit[field.add_raw(m(def, m(z, z)), m(cd, z)) as usize] = true;
    }
    (0..q as u8).find(|&t| !hit[t as usize])
}

#[derive(Debug, Clone, Serialize)]
pub struct KOrbitReport {
    pub q: u32,
    pub parity: Parity,
    /// `|Irr(Ā)| = q^7`.
    pub characters: u64,
    pub orbits: usize,
    /// Characters with `s_8 s_9 s_10 ≠ 0`.
    pub stratum_size: u64,
    pub stratum_orbits: usize,
    pub expected_stratum_orbits: u64,
    /// Stabilizer order → number of orbits in the stratum.
    pub stabilizer_histogram: BTreeMap<usize, usize>,
    /// The conjugation action on `Ā` is F_q-linear (checked on every element).
    pub action_linear: bool,
    pub representatives: usize,
    /// Every stratum orbit contains exactly one representative.
    pub representatives_ok: bool,
    /// Stabilizer orders of the representatives are as claimed.
    pub stabilizers_ok: bool,
}

impl KOrbitReport {
    pub fn passed(&self) -> bool {
        self.action_linear
            && self.representatives_ok
            && self.stabilizers_ok
            && self.stratum_orbits as u64 == self.expected_stratum_orbits
    }
}

/// The claimed representatives with their stabilizer orders: for odd q the
/// `(x,0,0,0,d,e,f)` with trivial stabilizers; for even q the
/// `(0,0,0,0,d,e,f)` (trivial) and `(x,0,0,c,d,e,f)` with
/// `x ∈ {0, t_{c,d,e,f}}` (order 2).
pub(crate) fn claimed_representatives(field: &FieldSpec) -> Vec<([u8; 7], usize)> {
    let q = field.q() as u8;
    let mut out = Vec::new();
    let units = 1..q;
    match Parity::of(q as u64) {
        Parity::Odd => {
            for d in units.clone() {
                for e in units.clone() {
                    for f in units.clone() {
                        for x in 0..q {
                            out.push(([x, 0, 0, 0, d, e, f], 1));
                        }
                    }
                }
            }
        }
        Parity::Even => {
            for d in units.clone() {
                for e in units.clone() {
                    for f in units.clone() {
                        out.push(([0, 0, 0, 0, d, e, f], 1));
                        for c in units.clone() {
                            let t = t_cdef(field, c, d, e, f).expect("even q");
                            for x in [0, t] {
                                out.push(([x, 0, 0, c, d, e, f], 2));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn k_orbit_analysis(group: &UnipotentGroup) -> Result<KOrbitReport, CharError> {
    let q = group.q();
    if q > 4 {
        return Err(CharError::Unsupported { q });
    }
    let parity = Parity::of(q as u64);
    let act = KAction::new(group);
    let ctx = quotient_context();
    let qq = q as usize;
    let total = qq.pow(7);

    let mut action_linear = true;
    'outer: for (ki, &k) in act.ks.iter().enumerate() {
        let kel = KAction::element_of(k);
        let kinv = group.inv(&kel, Some(&ctx));
        for l in 0..total {
            let a = act.decode(l);
            let mut d = [0u8; 12];
            for (i, &root) in A_ROOTS.iter().enumerate() {
                d[root - 1] = a[i];
            }
            let c = group.conj(&GroupElement::from_indices(d), &kinv, Some(&ctx));
            let expect = act.apply(ki, &a);
            let got: Vec<u8> = A_ROOTS.iter().map(|&r| c.coord(r)).collect();
            let outside = c
                .support()
                .difference(A_ROOTS.iter().copied().collect::<RootSet>());
            if got != expect || !outside.is_empty() {
                action_linear = false;
                break 'outer;
            }
        }
    }

    const UNSEEN: u32 = u32::MAX;
    let mut orbit_of = vec![UNSEEN; total];
    let mut orbits = 0usize;
    let mut stratum_orbits = 0usize;
    let mut stratum_size = 0u64;
    let mut histogram = BTreeMap::new();
    let in_stratum = |s: &[u8; 7]| s[4] != 0 && s[5] != 0 && s[6] != 0;
    for l in 0..total {
        if orbit_of[l] != UNSEEN {
            continue;
        }
        let s = act.decode(l);
        let mut size = 0usize;
        for k in 0..act.len() {
            let e = act.encode(&act.act(k, &s));
            if orbit_of[e] == UNSEEN {
                orbit_of[e] = orbits as u32;
                size += 1;
            }
        }
        if in_stratum(&s) {
            stratum_orbits += 1;
            stratum_size += size as u64;
            *histogram.entry(act.len() / size).or_insert(0) += 1;
        }
        orbits += 1;
    }

    let reps = claimed_representatives(group.field());
    let mut hits = vec![0u32; orbits];
    let mut stabilizers_ok = true;
    let mut all_in_stratum = true;
    for (s, stab) in &reps {
        all_in_stratum &= in_stratum(s);
        hits[orbit_of[act.encode(s)] as usize] += 1;
        stabilizers_ok &= act.stabilizer(s).len() == *stab;
    }
    let stratum_hit_once = (0..total)
        .filter(|&l| in_stratum(&act.decode(l)))
        .all(|l| hits[orbit_of[l] as usize] == 1);

    let v = (q - 1) as u64;
    let expected_stratum_orbits = match parity {
        Parity::Odd => q as u64 * v.pow(3),
        Parity::Even => v.pow(3) + 2 * v.pow(4),
    };
    Ok(KOrbitReport {
        q,
        parity,
        characters: total as u64,
        orbits,
        stratum_size,
        stratum_orbits,
        expected_stratum_orbits,
        stabilizer_histogram: histogram,
        action_linear,
        representatives: reps.len(),
        representatives_ok: all_in_stratum && stratum_hit_once,
        stabilizers_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_q3_has_trivial_stabilizers() {
        let g = UnipotentGroup::with_order(3).unwrap();
        let r = k_orbit_analysis(&g).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.stratum_orbits, 24);
        assert_eq!(r.stabilizer_histogram, BTreeMap::from([(1, 24)]));
        assert_eq!(r.stratum_size, 81 * 8);
    }

    #[test]
    fn even_q2_has_order_two_stabilizers() {
        let g = UnipotentGroup::with_order(2).unwrap();
        let r = k_orbit_analysis(&g).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.stabilizer_histogram, BTreeMap::from([(1, 1), (2, 2)]));
    }

    #[test]
    fn t_cdef_avoids_the_subgroup() {
        let f = FieldSpec::with_order(4).unwrap();
        for c in 1..4 {
            for d in 1..4 {
                let t = t_cdef(&f, c, d, 1, 1).unwrap();
                assert!(t > 0);
            }
        }
    }
}
