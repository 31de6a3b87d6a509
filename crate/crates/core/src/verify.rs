//! End-to-end checks of the structure theory, each reported with its expected
//! value, where that value comes from, and what was computed.

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::chars::{build_all, k_orbit_analysis, midafis, CharError, ClassCache};
use crate::classes::{class_count_polynomial, ClassError, Parity};
use crate::gf::{self, FieldSpec, GfError};
use crate::rootsys::{self, RootSet, NUM_ROOTS};
use crate::ugroup::{GroupElement, GroupError, UnipotentGroup};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classes(#[from] ClassError),
    #[error(transparent)]
    Chars(#[from] CharError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// Field and run options shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u32,
    pub n: u32,
    pub modulus: Option<Vec<u32>>,
    pub format: Format,
    pub allow_large: bool,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(p: u32, n: u32) -> Self {
        RunConfig {
            p,
            n,
            modulus: None,
            format: Format::Json,
            allow_large: false,
            threads: None,
        }
    }

    /// From a bare field order, factoring it into `p^n`.
    pub fn with_order(q: u32) -> Result<Self, VerifyError> {
        let (p, n) = gf::factor_prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Ok(Self::new(p, n))
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    pub fn field(&self) -> Result<FieldSpec, VerifyError> {
        Ok(FieldSpec::new(self.p, self.n, self.modulus.clone())?)
    }

    pub fn group(&self) -> Result<UnipotentGroup, VerifyError> {
        Ok(UnipotentGroup::new(self.field()?))
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    /// Where the expected value comes from.
    pub source: String,
    pub computed: String,
    pub passed: bool,
    /// Wall time; kept out of the serialized report so that output is
    /// reproducible byte for byte.
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check\tresult\texpected\tcomputed\tsource\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.expected,
                c.computed,
                c.source
            ));
        }
        out.push_str(&format!(
            "overall\t{}\n",
            if self.passed { "pass" } else { "FAIL" }
        ));
        out
    }
}

fn timed<F>(
    name: &str,
    expected: impl Into<String>,
    source: &str,
    f: F,
) -> Result<Check, VerifyError>
where
    F: FnOnce() -> Result<(String, bool), VerifyError>,
{
    let start = Instant::now();
    let (computed, passed) = f()?;
    Ok(Check {
        name: name.into(),
        expected: expected.into(),
        source: source.into(),
        computed,
        passed,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Every commutator `[x_i(t), x_j(u)]` against the relation table.
pub fn check_commutators(group: &UnipotentGroup) -> Result<Check, VerifyError> {
    timed(
        "commutator relations",
        "16 nontrivial, 50 trivial pairs; all values exact",
        "commutator relation table",
        || {
            let f = group.field();
            let q = group.q() as u8;
            let (mut nontrivial, mut trivial, mut bad) = (0, 0, 0);
            for i in 1..=NUM_ROOTS {
                for j in i + 1..=NUM_ROOTS {
                    let rel = rootsys::comm(i, j).expect("valid pair");
                    if rel.is_some() {
                        nontrivial += 1;
                    } else {
                        trivial += 1;
                    }
                    for t in 0..q {
                        for u in 0..q {
                            let c = group.commutator(
                                &group.root_element_raw(i, t),
                                &group.root_element_raw(j, u),
                                None,
                            );
                            let want = match rel {
                                Some(r) => group.root_element_raw(
                                    r.k,
                                    f.scalar_raw(r.sign as i64, f.mul_raw(t, u)),
                                ),
                                None => GroupElement::IDENTITY,
                            };
                            bad += usize::from(c != want);
                        }
                    }
                }
            }
            Ok((
                format!("{nontrivial} nontrivial, {trivial} trivial pairs; {bad} mismatches"),
                nontrivial == 16 && trivial == 50 && bad == 0,
            ))
        },
    )
}

/// `Φ₊ \ leg(α)` is closed for every root.
pub fn check_v_alpha_closed() -> Result<Check, VerifyError> {
    timed(
        "V_alpha closed",
        "closed for all 12 roots",
        "complement of a leg is a closed root set",
        || {
            let open: Vec<usize> = (1..=NUM_ROOTS)
                .filter(|&a| !rootsys::is_closed(rootsys::v_alpha(a).expect("valid root")))
                .collect();
            Ok((format!("not closed: {open:?}"), open.is_empty()))
        },
    )
}

/// `X_α ∩ [V_α, V_α] = {1}` for every root.
pub fn check_v_alpha_derived(group: &UnipotentGroup) -> Result<Check, VerifyError> {
    timed(
        "X_alpha meets [V_alpha,V_alpha] trivially",
        "trivial for all 12 roots",
        "X_alpha is not a commutator direction of V_alpha",
        || {
            let mut bad = Vec::new();
            for a in 1..=NUM_ROOTS {
                let v = group.subgroup(rootsys::v_alpha(a).expect("valid root"), None)?;
                let derived = group.derived_subgroup(&v)?;
                if derived
                    .iter()
                    .any(|g| !g.is_identity() && g.support() == RootSet::single(a))
                {
                    bad.push(a);
                }
            }
            Ok((format!("nontrivial for: {bad:?}"), bad.is_empty()))
        },
    )
}

/// Hook subgroups are special of type `q^{1+2|leg|}` with derived group and
/// centre equal to `X_α`.  For the simple roots the hook is `X_α` itself,
/// abelian of order q, and only that is checked.
pub fn check_hook_subgroups(group: &UnipotentGroup) -> Result<Check, VerifyError> {
    timed(
        "hook subgroups special",
        "|H_a| = q^(1+2|leg|), derived = centre = Frattini = X_a",
        "hook subgroups are special p-groups",
        || {
            let q = group.q();
            let mut bad = Vec::new();
            for a in 1..=NUM_ROOTS {
                let leg = rootsys::leg(a).expect("valid root").len() as u32;
                let h = group.subgroup(rootsys::hook(a).expect("valid root"), None)?;
                let st = group.derived_and_center(&h)?;
                let xa: Vec<GroupElement> =
                    (0..q as u8).map(|t| group.root_element_raw(a, t)).collect();
                let ok = st.order == (q as u128).pow(1 + 2 * leg)
                    && st.center == xa
                    && if leg == 0 {
                        st.derived_order == 1
                    } else {
                        st.derived == xa && st.is_special()
                    };
                if !ok {
                    bad.push(a);
                }
            }
            Ok((format!("failing roots: {bad:?}"), bad.is_empty()))
        },
    )
}

pub fn check_class_count(cache: &ClassCache) -> Result<Check, VerifyError> {
    let q = cache.group().q() as u64;
    let parity = Parity::of(q);
    let expected = class_count_polynomial(q, parity)?;
    let formula = match parity {
        Parity::Odd => "2q^5+5q^4-4q^3-4q^2+2q (odd q)",
        Parity::Even => "2q^5+8q^4-16q^3+14q^2-10q+3 (even q)",
    };
    timed("class count", expected.to_string(), formula, || {
        let n = cache.full()?.count() as i128;
        Ok((n.to_string(), n == expected))
    })
}

/// The `12(q-1)` midafis: norm 1, degree `q^|leg(α)|`, restriction to `X_α`
/// a multiple of `φ_{α,s}`, pairwise distinct.
pub fn check_midafis(cache: &ClassCache) -> Result<Check, VerifyError> {
    let q = cache.group().q() as i64;
    timed(
        "midafi suite",
        format!(
            "{} midafis, all irreducible, correct degree and restriction, distinct",
            12 * (q - 1)
        ),
        "midafis are irreducible and almost faithful",
        || {
            let full = cache.full()?;
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let (mut count, mut bad) = (0, Vec::new());
            for a in 1..=NUM_ROOTS {
                let deg = q.pow(rootsys::leg(a).expect("valid root").len() as u32);
                for (k, mu) in midafis(a, &full)?.into_iter().enumerate() {
                    let s = k as u8 + 1;
                    let restriction = mu.restrict_to_root_subgroup(a)?;
                    let ok = mu.is_irreducible()
                        && mu.degree() == deg
                        && restriction.len() == 1
                        && restriction[0].0.index() == s
                        && restriction[0].1 == deg
                        && seen.insert(mu.raw_values().to_vec());
                    count += 1;
                    if !ok {
                        bad.push((a, s));
                    }
                }
            }
            Ok((
                format!("{count} midafis; failures {bad:?}"),
                count == 12 * (q - 1) && bad.is_empty(),
            ))
        },
    )
}

pub fn check_k_orbits(group: &UnipotentGroup) -> Result<Check, VerifyError> {
    let q = group.q() as u64;
    let v = q - 1;
    let (expected, source) = match Parity::of(q) {
        Parity::Odd => (
            format!("{} orbits, trivial stabilizers", q * v.pow(3)),
            "odd representative set (x,0,0,0,d,e,f)",
        ),
        Parity::Even => (
            format!(
                "{} orbits, stabilizers of order 1 and 2",
                v.pow(3) + 2 * v.pow(4)
            ),
            "even representative sets (0,0,0,0,d,e,f) and (x,0,0,c,d,e,f)",
        ),
    };
    timed("K-orbits on Irr(A)", expected, source, || {
        let r = k_orbit_analysis(group)?;
        Ok((
            format!(
                "{} orbits, stabilizers {:?}, transversal {}, stabilizer orders {}, linear action {}",
                r.stratum_orbits,
                r.stabilizer_histogram,
                if r.representatives_ok { "ok" } else { "wrong" },
                if r.stabilizers_ok { "ok" } else { "wrong" },
                r.action_linear
            ),
            r.passed(),
        ))
    })
}

/// Builds the whole table and returns the completeness and multiplicity checks.
pub fn check_character_table(cache: &ClassCache) -> Result<Vec<Check>, VerifyError> {
    let start = Instant::now();
    let table = build_all(cache)?;
    let secs = start.elapsed().as_secs_f64();
    let c = &table.checks;
    let fam_fail: Vec<&str> = table
        .families
        .iter()
        .filter(|f| !f.passed())
        .map(|f| f.family)
        .collect();
    let check =
        |name: &str, expected: String, source: &str, computed: String, passed: bool| Check {
            name: name.into(),
            expected,
            source: source.into(),
            computed,
            passed,
            seconds: secs,
        };
    Ok(vec![
        check(
            "family counts and degrees",
            "every family block matches its count and degree".into(),
            "character family table",
            format!("failing families: {fam_fail:?}"),
            fam_fail.is_empty(),
        ),
        check(
            "completeness",
            format!("{} orthonormal irreducible characters", c.class_count),
            "number of conjugacy classes",
            format!(
                "{} characters, orthonormal {}",
                c.character_count, c.orthonormal
            ),
            c.character_count == c.class_count && c.orthonormal,
        ),
        check(
            "sum of squared degrees",
            c.group_order.to_string(),
            "|U| = q^12",
            c.sum_of_squares.to_string(),
            c.sum_of_squares == c.group_order,
        ),
        check(
            "degree multiplicities",
            format!("{:?}", c.expected_multiplicities),
            "degree multiplicity polynomials in v = q-1",
            format!("{:?}", c.multiplicities),
            c.multiplicities == c.expected_multiplicities,
        ),
        check(
            "kernel partition",
            "each character matches exactly one family signature".into(),
            "family kernel conditions",
            format!("{}", c.kernel_partition),
            c.kernel_partition,
        ),
    ])
}

/// Sum of `φ(s t) conj(φ(s' t))` over `t` is `q δ_{s s'}`.
pub fn check_additive_orthogonality(field: &FieldSpec) -> Result<Check, VerifyError> {
    timed(
        "additive character orthogonality",
        "q if s = s', else 0",
        "orthogonality of characters of F_q",
        || {
            let q = field.q() as u8;
            let p = field.p() as usize;
            let mut bad = 0;
            for s in 0..q {
                for s2 in 0..q {
                    let mut cyc = vec![0i64; p];
                    for t in 0..q {
                        let k = gf::additive_exponent(field, s, t) as usize + p
                            - gf::additive_exponent(field, s2, t) as usize;
                        cyc[k % p] += 1;
                    }
                    let v = gf::CycNumber::from_cyclic_integers(p as u32, &cyc);
                    let want =
                        gf::CycNumber::from_integer(p as u32, if s == s2 { q as i64 } else { 0 });
                    bad += usize::from(v != want);
                }
            }
            Ok((format!("{bad} failing pairs"), bad == 0))
        },
    )
}

/// Runs the full suite.  q = 2 and 3 run by default; q = 4 needs
/// `allow_large`; larger q is refused.
pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyReport, VerifyError> {
    let q = cfg.q();
    match q {
        2 | 3 => {}
        4 if cfg.allow_large => {}
        4 => return Err(VerifyError::Config("q = 4 requires --allow-large".into())),
        _ => {
            return Err(VerifyError::Config(format!(
                "verify supports q in {{2, 3, 4}}, got {q}"
            )))
        }
    }
    let group = cfg.group()?;
    let cache = ClassCache::new(group.clone(), cfg.allow_large);
    let mut checks = vec![
        check_commutators(&group)?,
        check_additive_orthogonality(group.field())?,
        check_v_alpha_closed()?,
    ];
    if q <= 3 {
        checks.push(check_v_alpha_derived(&group)?);
        checks.push(check_hook_subgroups(&group)?);
    }
    checks.push(check_class_count(&cache)?);
    checks.push(check_midafis(&cache)?);
    checks.push(check_k_orbits(&group)?);
    checks.extend(check_character_table(&cache)?);
    Ok(VerifyReport {
        q,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_q2_passes() {
        let r = cmd_verify(&RunConfig::new(2, 1)).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(r.passed);
        assert!(r.to_tsv().ends_with("overall\tpass\n"));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            cmd_verify(&RunConfig::new(2, 2)),
            Err(VerifyError::Config(_))
        ));
        assert!(matches!(
            cmd_verify(&RunConfig::new(5, 1)),
            Err(VerifyError::Config(_))
        ));
        assert_eq!(RunConfig::with_order(9).unwrap().n, 2);
        assert!(RunConfig::with_order(6).is_err());
    }
}
