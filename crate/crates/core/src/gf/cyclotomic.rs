//! Exact elements of the cyclotomic field Q(ζ_p).
//!
//! Coordinates are taken in the basis `1, ζ, ..., ζ^(p-2)`; the relation
//! `ζ^(p-1) = -(1 + ζ + ... + ζ^(p-2))` makes the representation unique.  For
//! `p = 2` the field is Q and the vector has a single entry.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    p: u32,
    coeffs: Vec<BigRational>,
}

/// Reduces a vector of length `p` (coefficients of `1, ζ, ..., ζ^(p-1)`) to
/// the canonical basis by subtracting the last coordinate from every other.
pub(crate) fn canonicalize<T>(cyclic: &[T]) -> Vec<T>
where
    T: Clone + std::ops::Sub<Output = T>,
{
    let p = cyclic.len();
    if p == 2 {
        // Q(ζ_2) = Q with ζ = -1
        return vec![cyclic[0].clone() - cyclic[1].clone()];
    }
    let last = cyclic[p - 1].clone();
    cyclic[..p - 1]
        .iter()
        .map(|c| c.clone() - last.clone())
        .collect()
}

impl CycNumber {
    pub fn zero(p: u32) -> Self {
        CycNumber {
            p,
            coeffs: vec![BigRational::zero(); (p as usize - 1).max(1)],
        }
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(p: u32) -> Self {
        Self::from_integer(p, 1)
    }

    /// `ζ_p^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let k = k.rem_euclid(p as i64) as usize;
        let mut cyc = vec![0i64; p as usize];
        cyc[k] = 1;
        Self::from_cyclic_integers(p, &cyc)
    }

    /// Builds a number from integer coefficients of `1, ζ, ..., ζ^(p-1)`.
    pub fn from_cyclic_integers(p: u32, cyclic: &[i64]) -> Self {
        assert_eq!(cyclic.len(), p as usize);
        let canon = canonicalize(cyclic);
        CycNumber {
            p,
            coeffs: canon
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds a number from canonical coordinates (length `max(p-1, 1)`).
    pub fn from_coefficients(p: u32, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), (p as usize - 1).max(1));
        CycNumber { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn cyclic(&self) -> Vec<BigRational> {
        let p = self.p as usize;
        if p == 2 {
            return vec![self.coeffs[0].clone(), BigRational::zero()];
        }
        let mut v = self.coeffs.clone();
        v.push(BigRational::zero());
        v
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic numbers over different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        CycNumber {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let p = self.p as usize;
        let a = self.cyclic();
        let b = other.cyclic();
        let mut prod = vec![BigRational::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % p] += x * y;
                }
            }
        }
        CycNumber {
            p: self.p,
            coeffs: canonicalize(&prod),
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^(-1)`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        if p == 2 {
            return self.clone();
        }
        let a = self.cyclic();
        let mut out = vec![BigRational::zero(); p];
        for (i, x) in a.into_iter().enumerate() {
            out[(p - i) % p] = x;
        }
        CycNumber {
            p: self.p,
            coeffs: canonicalize(&out),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNumber {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.p)?
                    } else {
                        write!(f, "z{}^{k}", self.p)?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: i64) -> CycNumber {
        CycNumber::zeta_pow(p, k)
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        assert_eq!(z(3, 1).add(&z(3, 2)), CycNumber::from_integer(3, -1));
        let mut s = CycNumber::zero(5);
        for k in 0..5 {
            s = s.add(&z(5, k));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn products_and_conjugates() {
        assert!(z(3, 1).mul(&z(3, 2)).is_one());
        assert_eq!(z(7, 3).mul(&z(7, 6)), z(7, 2));
        let m1 = CycNumber::from_integer(2, -1);
        assert_eq!(m1.conj(), m1);
        assert_eq!(z(2, 1), m1);
        assert_eq!(z(5, 2).conj(), z(5, 3));
        assert!(z(5, 2).mul(&z(5, 2).conj()).is_one());
    }

    #[test]
    fn rational_scaling() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let x = CycNumber::from_integer(3, 4).scale(&half);
        assert_eq!(
            x.as_rational().unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(z(3, 1).as_rational().is_none());
    }

    #[test]
    fn display_is_readable() {
        let x = z(3, 1).add(&CycNumber::from_integer(3, 2));
        assert_eq!(x.to_string(), "2 + z3");
        assert_eq!(z(3, 2).to_string(), "-1 - z3");
        assert_eq!(CycNumber::zero(2).to_string(), "0");
    }
}
