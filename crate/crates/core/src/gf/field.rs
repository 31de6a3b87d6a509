//! Finite fields GF(p^n) in the power basis of a fixed irreducible modulus.
//!
//! Elements are identified with their index `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! where `c_i` are the coordinates with respect to `1, x, ..., x^{n-1}`.  This
//! index order is the coefficient-lexicographic enumeration used everywhere a
//! canonical order of field elements is needed (packing, class representatives).
//! All arithmetic is table driven; `q <= 256` is enforced so indices fit a `u8`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GfError;

/// Largest field order supported by the `u8` element encoding.
pub const MAX_ORDER: u32 = 256;

const TABLE: usize = 1 << 16;

#[inline(always)]
fn slot(a: u8, b: u8) -> usize {
    (a as usize) << 8 | b as usize
}

/// A validated finite field together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    tag: u32,
    /// Addition and multiplication tables with row stride 256, so any pair of
    /// `u8` indices addresses them without a bounds check.
    add: Box<[u8; TABLE]>,
    mul: Box<[u8; TABLE]>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

/// JSON form of a field: `{"p": int, "n": int, "modulus": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

/// An element of a specific field.  Carries a fingerprint of the field it
/// belongs to so that mixing elements of different fields is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    index: u8,
    tag: u32,
}

impl FieldElement {
    /// Position in the coefficient-lexicographic enumeration.
    pub fn index(self) -> u8 {
        self.index
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in moduli (constant term first).  Prime fields use `x`; the
/// extension fields use Conway polynomials.
pub fn default_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    let m = match (p, n) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (3, 2) => vec![2, 2, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (5, 2) => vec![2, 4, 1],
        _ => return None,
    };
    Some(m)
}

// Polynomial helpers over GF(p); coefficient vectors, constant term first.

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    if r.len() > dm {
        for i in (dm..r.len()).rev() {
            let c = (r[i] * lead_inv) % p;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = i - dm + j;
                    r[idx] = (r[idx] + p - (c * mj) % p) % p;
                }
            }
        }
        r.truncate(dm);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a * b) % p == 1).expect("nonzero residue")
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=n/2`.  Exhaustive, intended for the small degrees in scope.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            let r = poly_rem(modulus, &f, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn fingerprint(p: u32, n: u32, modulus: &[u32]) -> u32 {
    // FNV-1a over the defining data.
    let mut h: u32 = 0x811c_9dc5;
    for w in [p, n].iter().chain(modulus.iter()) {
        for b in w.to_le_bytes() {
            h ^= b as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

impl FieldSpec {
    /// Builds GF(p^n).  When `modulus` is `None` the built-in table is used.
    pub fn new(p: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if n == 0 {
            return Err(GfError::BadExponent);
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or(GfError::TooLarge { p, n })? as u32;
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(p, n).ok_or(GfError::NoDefaultModulus { p, n })?,
        };
        if modulus.len() != n as usize + 1 {
            return Err(GfError::DegreeMismatch {
                expected: n,
                found: modulus.len().saturating_sub(1) as u32,
            });
        }
        if modulus.iter().any(|&c| c >= p) || modulus[n as usize] != 1 {
            return Err(GfError::NotMonic);
        }
        if !is_irreducible(&modulus, p) {
            return Err(GfError::Reducible(modulus));
        }
        let tag = fingerprint(p, n, &modulus);
        let mut f = FieldSpec {
            p,
            n,
            q,
            modulus,
            tag,
            add: Box::new([0; TABLE]),
            mul: Box::new([0; TABLE]),
            neg: Vec::new(),
            inv: Vec::new(),
            trace: Vec::new(),
        };
        f.build_tables();
        Ok(f)
    }

    /// Convenience: factor `q` as a prime power and use the default modulus.
    pub fn with_order(q: u32) -> Result<Self, GfError> {
        let (p, n) = factor_prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Self::new(p, n, None)
    }

    fn to_coeffs(&self, idx: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(self.n as usize);
        let mut x = idx;
        for _ in 0..self.n {
            c.push(x % self.p);
            x /= self.p;
        }
        c
    }

    fn index_of_coeffs(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;
        let n = self.n as usize;
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        self.trace = vec![0; q];
        let coeffs: Vec<Vec<u32>> = (0..q as u32).map(|i| self.to_coeffs(i)).collect();
        for a in 0..q {
            let neg: Vec<u32> = coeffs[a].iter().map(|&c| (p - c) % p).collect();
            self.neg[a] = self.index_of_coeffs(&neg) as u8;
            for b in 0..q {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                self.add[slot(a as u8, b as u8)] = self.index_of_coeffs(&sum) as u8;
                let mut prod = vec![0u32; 2 * n - 1];
                for (i, &x) in coeffs[a].iter().enumerate() {
                    for (j, &y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &self.modulus, p);
                r.resize(n, 0);
                self.mul[slot(a as u8, b as u8)] = self.index_of_coeffs(&r) as u8;
            }
        }
        for a in 1..q {
            self.inv[a] = (1..q)
                .find(|&b| self.mul[slot(a as u8, b as u8)] == 1)
                .expect("field element has an inverse") as u8;
        }
        // Tr(a) = a + a^p + ... + a^(p^(n-1))
        for a in 0..q {
            let mut acc = 0u8;
            let mut pw = a as u8;
            for _ in 0..n {
                acc = self.add[slot(acc, pw)];
                pw = self.pow_raw(pw, p as u64);
            }
            self.trace[a] = acc;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            p: self.p,
            n: self.n,
            modulus: self.modulus.clone(),
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<Self, GfError> {
        Self::new(j.p, j.n, Some(j.modulus.clone()))
    }

    // ----- checked element API -----

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Element with the given coefficient-lexicographic index.
    pub fn element(&self, index: u32) -> Result<FieldElement, GfError> {
        if index >= self.q {
            return Err(GfError::OutOfRange { index, q: self.q });
        }
        Ok(self.wrap(index as u8))
    }

    /// Element from power-basis coordinates (constant term first).
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::BadCoefficients);
        }
        Ok(self.wrap(self.index_of_coeffs(coeffs) as u8))
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        self.to_coeffs(a.index as u32)
    }

    /// All elements in coefficient-lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.wrap(i as u8))
    }

    pub(crate) fn wrap(&self, index: u8) -> FieldElement {
        FieldElement {
            index,
            tag: self.tag,
        }
    }

    fn check(&self, a: FieldElement) -> Result<u8, GfError> {
        if a.tag != self.tag || a.index as u32 >= self.q {
            return Err(GfError::ForeignElement);
        }
        Ok(a.index)
    }

    pub fn owns(&self, a: FieldElement) -> bool {
        self.check(a).is_ok()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.sub_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.wrap(self.neg_raw(self.check(a)?)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.wrap(self.inv[a as usize]))
    }

    /// The absolute trace to the prime field, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: FieldElement) -> Result<u32, GfError> {
        Ok(self.trace_raw(self.check(a)?) as u32)
    }

    // ----- raw index arithmetic, used by the hot loops -----

    /// The addition and multiplication tables, indexed by `a << 8 | b`.
    #[inline]
    pub(crate) fn tables(&self) -> (&[u8; TABLE], &[u8; TABLE]) {
        (&self.add, &self.mul)
    }

    #[inline]
    pub fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.add[slot(a, b)]
    }

    #[inline]
    pub fn sub_raw(&self, a: u8, b: u8) -> u8 {
        self.add_raw(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.mul[slot(a, b)]
    }

    #[inline]
    pub fn neg_raw(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element; `inv_raw(0)` returns 0.
    #[inline]
    pub fn inv_raw(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Trace as an integer in `[0, p)`.
    #[inline]
    pub fn trace_raw(&self, a: u8) -> u8 {
        self.trace[a as usize]
    }

    pub fn pow_raw(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplies by an integer (the image of `k` in the prime field).
    pub fn scalar_raw(&self, k: i64, a: u8) -> u8 {
        let k = k.rem_euclid(self.p as i64) as u8;
        // k < p is the prime-field element with index k
        self.mul_raw(k, a)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Writes `q = p^n` with `p` prime, if possible.
pub fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}
