//! The positive roots of D4, their commutator relations, and hook combinatorics.
//!
//! Roots are numbered 1..=12 in the CHEVIE order; coordinates are on the simple
//! roots α1..α4 where α3 is the central node of the Dynkin diagram.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub const NUM_ROOTS: usize = 12;

/// Simple-root coordinates of α1..α12.
const COEFFS: [[u8; 4]; NUM_ROOTS] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 0, 1, 0],
    [0, 1, 1, 0],
    [0, 0, 1, 1],
    [1, 1, 1, 0],
    [1, 0, 1, 1],
    [0, 1, 1, 1],
    [1, 1, 1, 1],
    [1, 1, 2, 1],
];

/// `[x_i(t), x_j(u)] = x_k(sign·t·u)` for `i < j`.  Every pair not listed
/// commutes.
const RELATIONS: [(u8, u8, u8, i8); 16] = [
    (1, 3, 5, 1),
    (1, 6, 8, -1),
    (1, 7, 9, 1),
    (1, 10, 11, -1),
    (2, 3, 6, 1),
    (2, 5, 8, -1),
    (2, 7, 10, 1),
    (2, 9, 11, -1),
    (3, 4, 7, 1),
    (3, 11, 12, -1),
    (4, 5, 9, -1),
    (4, 6, 10, -1),
    (4, 8, 11, -1),
    (5, 10, 12, -1),
    (6, 9, 12, -1),
    (7, 8, 12, 1),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("root index {0} is outside 1..=12")]
    BadIndex(usize),
    #[error("commutator of a root with itself")]
    SameRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Root {
    pub index: usize,
    pub coeffs: [u8; 4],
    pub height: u32,
}

/// `[x_i(t), x_j(u)] = x_k(sign·t·u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CommRel {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

/// A set of positive roots, stored as a 12-bit mask (bit `i-1` for α_i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RootSet(u16);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);
    pub const ALL: RootSet = RootSet((1 << NUM_ROOTS) - 1);

    pub fn from_bits(bits: u16) -> Self {
        RootSet(bits & Self::ALL.0)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        debug_assert!((1..=NUM_ROOTS).contains(&i));
        RootSet(1 << (i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=NUM_ROOTS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn union(self, o: RootSet) -> RootSet {
        RootSet(self.0 | o.0)
    }

    pub fn intersection(self, o: RootSet) -> RootSet {
        RootSet(self.0 & o.0)
    }

    pub fn difference(self, o: RootSet) -> RootSet {
        RootSet(self.0 & !o.0)
    }

    pub fn complement(self) -> RootSet {
        RootSet(!self.0 & Self::ALL.0)
    }

    pub fn is_subset(self, o: RootSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: RootSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=NUM_ROOTS).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for RootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

fn check(i: usize) -> Result<(), RootError> {
    if (1..=NUM_ROOTS).contains(&i) {
        Ok(())
    } else {
        Err(RootError::BadIndex(i))
    }
}

pub fn root(i: usize) -> Result<Root, RootError> {
    check(i)?;
    let coeffs = COEFFS[i - 1];
    Ok(Root {
        index: i,
        coeffs,
        height: coeffs.iter().map(|&c| c as u32).sum(),
    })
}

pub fn roots() -> Vec<Root> {
    (1..=NUM_ROOTS).map(|i| root(i).unwrap()).collect()
}

pub fn height(i: usize) -> u32 {
    COEFFS[i - 1].iter().map(|&c| c as u32).sum()
}

/// Index of the positive root with the given coordinates.
pub fn root_with_coeffs(c: [u8; 4]) -> Option<usize> {
    COEFFS.iter().position(|&r| r == c).map(|p| p + 1)
}

/// `α_i + α_j` if it is a root.
pub fn sum_root(i: usize, j: usize) -> Option<usize> {
    let (a, b) = (COEFFS[i - 1], COEFFS[j - 1]);
    root_with_coeffs([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
}

/// The commutator relation for the ordered pair `(i, j)`.  For `i > j` the
/// listed relation is inverted, which negates its sign.
pub fn comm(i: usize, j: usize) -> Result<Option<CommRel>, RootError> {
    check(i)?;
    check(j)?;
    if i == j {
        return Err(RootError::SameRoot);
    }
    let (lo, hi) = (i.min(j), i.max(j));
    Ok(RELATIONS
        .iter()
        .find(|r| r.0 as usize == lo && r.1 as usize == hi)
        .map(|&(_, _, k, sign)| CommRel {
            i,
            j,
            k: k as usize,
            sign: if i < j { sign } else { -sign },
        }))
}

/// All 16 listed relations, `i < j`.
pub fn relations() -> Vec<CommRel> {
    RELATIONS
        .iter()
        .map(|&(i, j, k, sign)| CommRel {
            i: i as usize,
            j: j as usize,
            k: k as usize,
            sign,
        })
        .collect()
}

pub fn hook(alpha: usize) -> Result<RootSet, RootError> {
    check(alpha)?;
    let mut h = RootSet::single(alpha);
    for g in 1..=NUM_ROOTS {
        if (1..=NUM_ROOTS).any(|g2| sum_root(g, g2) == Some(alpha)) {
            h.insert(g);
        }
    }
    Ok(h)
}

pub fn arm(alpha: usize) -> Result<RootSet, RootError> {
    check(alpha)?;
    if alpha == 12 {
        return Ok([8, 9, 10, 11].into_iter().collect());
    }
    Ok(hook(alpha)?
        .intersection(hook(12)?)
        .difference(RootSet::single(alpha)))
}

pub fn leg(alpha: usize) -> Result<RootSet, RootError> {
    Ok(hook(alpha)?
        .difference(arm(alpha)?)
        .difference(RootSet::single(alpha)))
}

/// `Φ₊ \ leg(α)`, the root set of the subgroup the midafis are induced from.
pub fn v_alpha(alpha: usize) -> Result<RootSet, RootError> {
    Ok(leg(alpha)?.complement())
}

/// Closed: for all `α, β ∈ S`, either `α + β ∈ S` or `α + β` is not a root.
pub fn is_closed(s: RootSet) -> bool {
    s.iter().all(|a| {
        s.iter()
            .all(|b| sum_root(a, b).is_none_or(|c| s.contains(c)))
    })
}

/// Upper-closed: `γ ∈ N` and `γ + δ ∈ Φ₊` imply `γ + δ ∈ N`.  These are the
/// root sets of normal pattern subgroups.
pub fn is_upper_closed(n: RootSet) -> bool {
    n.iter()
        .all(|g| (1..=NUM_ROOTS).all(|d| sum_root(g, d).is_none_or(|c| n.contains(c))))
}

/// Roots of `S` that are a sum of two roots of `S`.
pub fn sums_within(s: RootSet) -> RootSet {
    let mut out = RootSet::EMPTY;
    for a in s.iter() {
        for b in s.iter() {
            if let Some(c) = sum_root(a, b) {
                if s.contains(c) {
                    out.insert(c);
                }
            }
        }
    }
    out
}

/// Parses a comma-separated list of root indices such as `"11,12"`.
pub fn parse_root_list(s: &str) -> Result<RootSet, RootError> {
    let mut set = RootSet::EMPTY;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = tok.parse().map_err(|_| RootError::BadIndex(0))?;
        check(i)?;
        set.insert(i);
    }
    Ok(set)
}
