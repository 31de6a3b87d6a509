//! Finite fields, the fixed additive character φ and exact values in Q(ζ_p).

mod cyclotomic;
mod field;

pub(crate) use cyclotomic::canonicalize;
pub use cyclotomic::CycNumber;
pub use field::{
    default_modulus, factor_prime_power, is_irreducible, is_prime, FieldElement, FieldJson,
    FieldSpec, MAX_ORDER,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field exponent must be at least 1")]
    BadExponent,
    #[error("GF({p}^{n}) exceeds the supported field order")]
    TooLarge { p: u32, n: u32 },
    #[error("no built-in modulus for GF({p}^{n}); pass one explicitly")]
    NoDefaultModulus { p: u32, n: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("modulus must be monic with coefficients in [0, p)")]
    NotMonic,
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("index {index} is not an element of a field with {q} elements")]
    OutOfRange { index: u32, q: u32 },
    #[error("coefficient vector does not describe an element of this field")]
    BadCoefficients,
    #[error("element belongs to a different field")]
    ForeignElement,
    #[error("zero has no inverse")]
    ZeroInverse,
}

/// Exponent `k` with `φ(s·t) = ζ_p^k`, where `φ(t) = ζ_p^{Tr(t)}`.
#[inline]
pub fn additive_exponent(field: &FieldSpec, s: u8, t: u8) -> u8 {
    field.trace_raw(field.mul_raw(s, t))
}

/// The additive character value `φ(s·t)` as an exact cyclotomic number.
pub fn additive_character(
    field: &FieldSpec,
    s: FieldElement,
    t: FieldElement,
) -> Result<CycNumber, GfError> {
    let k = field.trace(field.mul(s, t)?)?;
    Ok(CycNumber::zeta_pow(field.p(), k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let f2 = FieldSpec::with_order(2).unwrap();
        let one2 = f2.one();
        assert!(additive_character(&f2, one2, f2.zero()).unwrap().is_one());
        assert_eq!(
            additive_character(&f2, one2, one2).unwrap(),
            CycNumber::from_integer(2, -1)
        );

        let f3 = FieldSpec::with_order(3).unwrap();
        assert_eq!(
            additive_character(&f3, f3.one(), f3.one()).unwrap(),
            CycNumber::zeta_pow(3, 1)
        );

        let f4 = FieldSpec::with_order(4).unwrap();
        // x·x = x + 1 and Tr(x + 1) = Tr(x) + Tr(1) = 1 + 0
        let x = f4.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(
            additive_character(&f4, x, x).unwrap(),
            CycNumber::from_integer(2, -1)
        );
    }

    #[test]
    fn phi_is_a_nontrivial_homomorphism() {
        for q in [2, 3, 4, 5, 8, 9, 27] {
            let f = FieldSpec::with_order(q).unwrap();
            let p = f.p() as u8;
            let mut nontrivial = false;
            for a in 0..q as u8 {
                nontrivial |= additive_exponent(&f, 1, a) != 0;
                for b in 0..q as u8 {
                    let lhs = additive_exponent(&f, 1, f.add_raw(a, b));
                    let rhs = (additive_exponent(&f, 1, a) + additive_exponent(&f, 1, b)) % p;
                    assert_eq!(lhs, rhs);
                }
            }
            assert!(nontrivial);
        }
    }

    #[test]
    fn phi_orthogonality() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FieldSpec::with_order(q).unwrap();
            for s in f.elements() {
                let mut sum = CycNumber::zero(f.p());
                for t in f.elements() {
                    sum = sum.add(&additive_character(&f, s, t).unwrap());
                }
                let expected = if s.index() == 0 { q as i64 } else { 0 };
                assert_eq!(sum, CycNumber::from_integer(f.p(), expected), "q={q}");
            }
        }
    }
}
