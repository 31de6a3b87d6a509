//! Arithmetic in U(q), the group generated by the positive root elements of D4(q).
//!
//! Every element has a unique normal form `x_1(d_1) x_2(d_2) ... x_12(d_12)`;
//! a [`GroupElement`] stores the twelve coordinates as field indices.  Products
//! are computed by collection using the commutator relations of
//! [`crate::rootsys`].  Two collection routes exist: [`UnipotentGroup::normalize`]
//! rewrites an arbitrary word by adjacent transpositions, and the multiplication
//! routines insert one letter at a time into a normal form.  They are checked
//! against each other in the tests.

mod collect;
mod formula;
pub(crate) mod subgroup;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, GfError};
use crate::rootsys::{self, RootSet, NUM_ROOTS};
use formula::{vars_ab, vars_at, Formulas};

pub use subgroup::{PatternSubgroup, SubgroupStructure, DEFAULT_ENUMERATION_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("root index {0} is outside 1..=12")]
    BadRoot(usize),
    #[error("root set {0:?} is not closed")]
    NotClosed(RootSet),
    #[error("root set {0:?} is not upper-closed, so it does not span a normal subgroup")]
    NotNormal(RootSet),
    #[error("pack code {0} is out of range")]
    BadCode(u64),
    #[error("q^12 does not fit a 64-bit pack code")]
    CodeOverflow,
    #[error("enumerating {size} elements exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("malformed element: {0}")]
    Parse(String),
}

/// `x_1(d_1) ... x_12(d_12)`; `d[i-1]` is the field index of `d_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement {
    pub(crate) d: [u8; NUM_ROOTS],
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { d: [0; NUM_ROOTS] };

    pub fn from_indices(d: [u8; NUM_ROOTS]) -> Self {
        GroupElement { d }
    }

    /// Field indices of the coordinates `d_1..d_12`.
    pub fn indices(&self) -> [u8; NUM_ROOTS] {
        self.d
    }

    /// Coordinate attached to root `i` (1-based).
    pub fn coord(&self, i: usize) -> u8 {
        self.d[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.d == [0; NUM_ROOTS]
    }

    /// Roots with a nonzero coordinate.
    pub fn support(&self) -> RootSet {
        (1..=NUM_ROOTS).filter(|&i| self.d[i - 1] != 0).collect()
    }
}

/// A word `x_{i_1}(t_1) x_{i_2}(t_2) ...` in root elements, not yet collected.
pub type Word = Vec<(usize, FieldElement)>;

/// Quotient of U by the normal pattern subgroup on an upper-closed root set.
/// Cosets are represented by the normal form with the killed coordinates zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientContext {
    killed: RootSet,
}

impl QuotientContext {
    pub fn new(killed: RootSet) -> Result<Self, GroupError> {
        if !killed.is_empty() && !rootsys::is_upper_closed(killed) {
            return Err(GroupError::NotNormal(killed));
        }
        Ok(QuotientContext { killed })
    }

    pub fn killed(&self) -> RootSet {
        self.killed
    }
}

pub(crate) fn killed_of(ctx: Option<&QuotientContext>) -> RootSet {
    ctx.map_or(RootSet::EMPTY, |c| c.killed)
}

/// JSON element form `{"d": [[c0, ...], ... x12]}` with power-basis coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub d: Vec<Vec<u32>>,
}

/// U(q) over a fixed field: holds the field tables and the relation table in
/// a layout suited to collection.
#[derive(Debug, Clone)]
pub struct UnipotentGroup {
    field: Arc<FieldSpec>,
    /// `rel[j][i] = Some((k, sign))` iff `[x_j(u), x_i(t)] = x_k(sign·u·t)` (0-based).
    rel: [[Option<(u8, i8)>; NUM_ROOTS]; NUM_ROOTS],
    formulas: Arc<Formulas>,
}

impl UnipotentGroup {
    pub fn new(field: FieldSpec) -> Self {
        Self::with_field(Arc::new(field))
    }

    pub fn with_field(field: Arc<FieldSpec>) -> Self {
        let mut rel = [[None; NUM_ROOTS]; NUM_ROOTS];
        for j in 1..=NUM_ROOTS {
            for i in 1..=NUM_ROOTS {
                if i != j {
                    if let Some(r) = rootsys::comm(j, i).unwrap() {
                        rel[j - 1][i - 1] = Some(((r.k - 1) as u8, r.sign));
                    }
                }
            }
        }
        let formulas = Arc::new(Formulas::derive(&rel, field.p()));
        UnipotentGroup {
            field,
            rel,
            formulas,
        }
    }

    pub fn with_order(q: u32) -> Result<Self, GroupError> {
        Ok(Self::new(FieldSpec::with_order(q)?))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldSpec> {
        self.field.clone()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// `q^(12 - |killed|)`.
    pub fn order(&self, ctx: Option<&QuotientContext>) -> u128 {
        (self.q() as u128).pow((NUM_ROOTS - killed_of(ctx).len()) as u32)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// `x_i(t)`.
    pub fn root_element(&self, i: usize, t: FieldElement) -> Result<GroupElement, GroupError> {
        if !(1..=NUM_ROOTS).contains(&i) {
            return Err(GroupError::BadRoot(i));
        }
        if !self.field.owns(t) {
            return Err(GfError::ForeignElement.into());
        }
        let mut d = [0; NUM_ROOTS];
        d[i - 1] = t.index();
        Ok(GroupElement { d })
    }

    pub(crate) fn root_element_raw(&self, i: usize, t: u8) -> GroupElement {
        let mut d = [0; NUM_ROOTS];
        d[i - 1] = t;
        GroupElement { d }
    }

    pub fn element(&self, coords: &[FieldElement]) -> Result<GroupElement, GroupError> {
        if coords.len() != NUM_ROOTS {
            return Err(GroupError::Parse(format!(
                "expected 12 coordinates, got {}",
                coords.len()
            )));
        }
        let mut d = [0; NUM_ROOTS];
        for (slot, &c) in d.iter_mut().zip(coords) {
            if !self.field.owns(c) {
                return Err(GfError::ForeignElement.into());
            }
            *slot = c.index();
        }
        Ok(GroupElement { d })
    }

    pub fn coordinates(&self, g: &GroupElement) -> Vec<FieldElement> {
        g.d.iter().map(|&i| self.field.wrap(i)).collect()
    }

    /// Zeroes the killed coordinates, giving the canonical coset representative.
    pub fn project(&self, g: &GroupElement, ctx: Option<&QuotientContext>) -> GroupElement {
        let killed = killed_of(ctx);
        let mut d = g.d;
        for i in killed.iter() {
            d[i - 1] = 0;
        }
        GroupElement { d }
    }

    // ----- collection -----

    /// Right-multiplies the normal form `d` by `x_i(t)` (0-based `i`).
    fn push_letter(&self, d: &mut [u8; NUM_ROOTS], i: usize, t: u8) {
        if t == 0 {
            return;
        }
        let f = &*self.field;
        let mut tail = [(0u8, 0u8); NUM_ROOTS];
        let mut n = 0;
        for (j, dj) in d.iter_mut().enumerate().skip(i + 1) {
            if *dj != 0 {
                tail[n] = (j as u8, *dj);
                n += 1;
                *dj = 0;
            }
        }
        d[i] = f.add_raw(d[i], t);
        // x_i(t)^-1 x_j(u) x_i(t) = x_j(u) [x_j(u), x_i(t)]
        for &(j, u) in &tail[..n] {
            let j = j as usize;
            self.push_letter(d, j, u);
            if let Some((k, sign)) = self.rel[j][i] {
                let v = f.scalar_raw(sign as i64, f.mul_raw(u, t));
                self.push_letter(d, k as usize, v);
            }
        }
    }

    /// `a·b` by inserting the letters of `b` one at a time.  Reference route
    /// for the closed formulas used by [`UnipotentGroup::mul`].
    pub fn mul_by_insertion(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut d = a.d;
        for (i, &t) in b.d.iter().enumerate() {
            self.push_letter(&mut d, i, t);
        }
        GroupElement { d }
    }

    /// `a^-1` by inserting the reversed, negated letters of `a`.
    pub fn inv_by_insertion(&self, a: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let mut d = [0; NUM_ROOTS];
        for i in (0..NUM_ROOTS).rev() {
            self.push_letter(&mut d, i, f.neg_raw(a.d[i]));
        }
        GroupElement { d }
    }

    #[inline]
    fn kill(d: &mut [u8; NUM_ROOTS], killed: u16) {
        if killed != 0 {
            for (i, c) in d.iter_mut().enumerate() {
                if killed & (1 << i) != 0 {
                    *c = 0;
                }
            }
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: &GroupElement, b: &GroupElement, killed: u16) -> GroupElement {
        let mut d = self.formulas.mul.eval(&self.field, &vars_ab(&a.d, &b.d));
        Self::kill(&mut d, killed);
        GroupElement { d }
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: &GroupElement, killed: u16) -> GroupElement {
        let mut d = self.formulas.inv.eval(&self.field, &vars_at(&a.d, 0));
        Self::kill(&mut d, killed);
        GroupElement { d }
    }

    /// `h^-1 g h`.
    #[inline]
    pub(crate) fn conj_raw(&self, g: &GroupElement, h: &GroupElement, killed: u16) -> GroupElement {
        let hi = self.inv_raw(h, killed);
        let t = self.mul_raw(&hi, g, killed);
        self.mul_raw(&t, h, killed)
    }

    /// `x_i(-t) g x_i(t)`, 0-based `i`.
    #[inline]
    pub(crate) fn conj_by_root_raw(
        &self,
        g: &GroupElement,
        i: usize,
        t: u8,
        killed: u16,
    ) -> GroupElement {
        let mut d = if i < 4 {
            self.formulas.conj_simple[i].eval(&self.field, &vars_at(&g.d, t))
        } else {
            let x = self.root_element_raw(i + 1, t);
            return self.conj_raw(g, &x, killed);
        };
        Self::kill(&mut d, killed);
        GroupElement { d }
    }

    /// Number of monomials in the closed multiplication formula.
    pub fn mul_formula_terms(&self) -> usize {
        self.formulas.mul.len()
    }

    fn masked(&self, g: &GroupElement, ctx: Option<&QuotientContext>) -> GroupElement {
        if ctx.is_some() {
            self.project(g, ctx)
        } else {
            *g
        }
    }

    pub fn mul(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        ctx: Option<&QuotientContext>,
    ) -> GroupElement {
        let k = killed_of(ctx).bits();
        self.mul_raw(&self.masked(a, ctx), &self.masked(b, ctx), k)
    }

    pub fn inv(&self, a: &GroupElement, ctx: Option<&QuotientContext>) -> GroupElement {
        self.inv_raw(&self.masked(a, ctx), killed_of(ctx).bits())
    }

    /// Right conjugation `h^-1 g h`.  The left-exponent form `h g h^-1` is
    /// `conj(g, h^-1)`.
    pub fn conj(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        ctx: Option<&QuotientContext>,
    ) -> GroupElement {
        let k = killed_of(ctx).bits();
        self.conj_raw(&self.masked(g, ctx), &self.masked(h, ctx), k)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(
        &self,
        a: &GroupElement,
        b: &GroupElement,
        ctx: Option<&QuotientContext>,
    ) -> GroupElement {
        let k = killed_of(ctx).bits();
        let (a, b) = (self.masked(a, ctx), self.masked(b, ctx));
        let ai = self.inv_raw(&a, k);
        let bi = self.inv_raw(&b, k);
        let x = self.mul_raw(&ai, &bi, k);
        let x = self.mul_raw(&x, &a, k);
        self.mul_raw(&x, &b, k)
    }

    /// Collects a word by adjacent transpositions (see [`collect`]).
    pub fn normalize(
        &self,
        word: &[(usize, FieldElement)],
        ctx: Option<&QuotientContext>,
    ) -> Result<GroupElement, GroupError> {
        let mut raw = Vec::with_capacity(word.len());
        for &(i, t) in word {
            if !(1..=NUM_ROOTS).contains(&i) {
                return Err(GroupError::BadRoot(i));
            }
            if !self.field.owns(t) {
                return Err(GfError::ForeignElement.into());
            }
            raw.push((i as u8 - 1, t.index()));
        }
        let g = collect::bubble_collect(self, raw);
        Ok(self.project(&g, ctx))
    }

    /// The letters of a normal form, as a word.
    pub fn word_of(&self, g: &GroupElement) -> Word {
        (1..=NUM_ROOTS)
            .filter(|&i| g.d[i - 1] != 0)
            .map(|i| (i, self.field.wrap(g.d[i - 1])))
            .collect()
    }

    pub(crate) fn rel(&self, j: usize, i: usize) -> Option<(u8, i8)> {
        self.rel[j][i]
    }

    // ----- packing -----

    fn check_code_width(&self) -> Result<(), GroupError> {
        (self.q() as u128)
            .checked_pow(NUM_ROOTS as u32)
            .filter(|&v| v <= u64::MAX as u128)
            .map(|_| ())
            .ok_or(GroupError::CodeOverflow)
    }

    /// `Σ d_i q^(i-1)` with `d_i` read as field indices.
    pub fn pack(&self, g: &GroupElement) -> Result<u64, GroupError> {
        self.check_code_width()?;
        Ok(self.pack_unchecked(g))
    }

    #[inline]
    pub(crate) fn pack_unchecked(&self, g: &GroupElement) -> u64 {
        let q = self.q() as u64;
        g.d.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn unpack(&self, code: u64) -> Result<GroupElement, GroupError> {
        self.check_code_width()?;
        let q = self.q() as u64;
        if code as u128 >= (q as u128).pow(NUM_ROOTS as u32) {
            return Err(GroupError::BadCode(code));
        }
        let mut d = [0; NUM_ROOTS];
        let mut c = code;
        for slot in d.iter_mut() {
            *slot = (c % q) as u8;
            c /= q;
        }
        Ok(GroupElement { d })
    }

    // ----- text and JSON forms -----

    /// Parses `"d1,d2,...,d12"` where each coordinate is a field index, or a
    /// `:`-separated coefficient vector such as `1:1` for `1 + x`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let toks: Vec<&str> = s.split(',').map(str::trim).collect();
        if toks.len() != NUM_ROOTS {
            return Err(GroupError::Parse(format!(
                "expected 12 comma-separated coordinates, got {}",
                toks.len()
            )));
        }
        let mut d = [0; NUM_ROOTS];
        for (slot, tok) in d.iter_mut().zip(toks) {
            let bad = || GroupError::Parse(format!("bad coordinate {tok:?}"));
            let e = if tok.contains(':') {
                let coeffs = tok
                    .split(':')
                    .map(|c| c.parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                self.field.from_coefficients(&coeffs)?
            } else {
                self.field.element(tok.parse::<u32>().map_err(|_| bad())?)?
            };
            *slot = e.index();
        }
        Ok(GroupElement { d })
    }

    pub fn format_element(&self, g: &GroupElement) -> String {
        g.d.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_json(&self, g: &GroupElement) -> ElementJson {
        ElementJson {
            d: g.d
                .iter()
                .map(|&c| self.field.coefficients(self.field.wrap(c)))
                .collect(),
        }
    }

    pub fn from_json(&self, j: &ElementJson) -> Result<GroupElement, GroupError> {
        if j.d.len() != NUM_ROOTS {
            return Err(GroupError::Parse("expected 12 coordinates".into()));
        }
        let mut d = [0; NUM_ROOTS];
        for (slot, c) in d.iter_mut().zip(&j.d) {
            *slot = self.field.from_coefficients(c)?.index();
        }
        Ok(GroupElement { d })
    }
}
