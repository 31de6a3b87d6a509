//! The seven acceptance criteria.  Runs without the libtest harness so each
//! criterion prints exactly one line, then exits non-zero if any failed.

use std::sync::Arc;
use std::time::Instant;

use d4_unipotent::chars::{
    induce, induce_explicit, induce_full_sum, midafis, ClassCache, ExplicitSubgroup,
    LinearCharacter,
};
use d4_unipotent::classes::conjugacy_classes;
use d4_unipotent::rootsys::{self, RootSet};
use d4_unipotent::ugroup::{GroupElement, QuotientContext, UnipotentGroup};
use d4_unipotent::verify::{self, Check};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn group(q: u32) -> UnipotentGroup {
    UnipotentGroup::with_order(q).unwrap()
}

/// Folds library checks into an outcome: details on success, the first
/// failing check otherwise.
fn checks(list: Vec<(u32, Check)>) -> Outcome {
    let mut notes = Vec::new();
    for (q, c) in list {
        // q = 0 marks checks that do not depend on the field
        let at = if q == 0 {
            "roots".to_string()
        } else {
            format!("q={q}")
        };
        if !c.passed {
            return Err(format!(
                "{at} {}: expected {}, got {}",
                c.name, c.expected, c.computed
            ));
        }
        notes.push(format!("{at} {}", c.computed));
    }
    Ok(notes)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn commutators() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3, 4] {
        out.push((q, verify::check_commutators(&group(q)).map_err(err)?));
    }
    checks(out)
}

fn class_counts() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3, 4] {
        let cache = ClassCache::new(group(q), true);
        out.push((q, verify::check_class_count(&cache).map_err(err)?));
    }
    checks(out)
}

fn midafi_suite() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3] {
        let cache = ClassCache::new(group(q), false);
        out.push((q, verify::check_midafis(&cache).map_err(err)?));
    }
    checks(out)
}

fn structural() -> Outcome {
    let mut out = vec![(0, verify::check_v_alpha_closed().map_err(err)?)];
    for q in [2, 3] {
        let g = group(q);
        out.push((q, verify::check_v_alpha_derived(&g).map_err(err)?));
        out.push((q, verify::check_hook_subgroups(&g).map_err(err)?));
    }
    checks(out)
}

fn k_orbits() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3, 4] {
        out.push((q, verify::check_k_orbits(&group(q)).map_err(err)?));
    }
    checks(out)
}

fn full_tables() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3] {
        let cache = ClassCache::new(group(q), false);
        for c in verify::check_character_table(&cache).map_err(err)? {
            out.push((q, c));
        }
    }
    checks(out).map(|notes| {
        notes
            .into_iter()
            .filter(|n| n.contains("characters") || n.contains('{'))
            .collect()
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn element(q: u32) -> impl Strategy<Value = GroupElement> {
    prop::array::uniform12(0..q as u8).prop_map(GroupElement::from_indices)
}

fn closed_set() -> impl Strategy<Value = RootSet> {
    (1u16..1 << 12)
        .prop_map(RootSet::from_bits)
        .prop_filter("closed", |s| rootsys::is_closed(*s))
}

/// Proper nonempty normal pattern subgroups.
fn upper_ideal() -> impl Strategy<Value = RootSet> {
    (1u16..(1 << 12) - 1)
        .prop_map(RootSet::from_bits)
        .prop_filter("upper closed", |s| rootsys::is_upper_closed(*s))
}

fn run<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Result<String, String> {
    r.map(|_| format!("{name} ok"))
        .map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Outcome {
    let mut notes = Vec::new();

    let assoc = (
        prop::sample::select(vec![2u32, 3, 4, 5]),
        element(5),
        element(5),
        element(5),
    )
        .prop_map(|(q, a, b, c)| {
            let m = |x: GroupElement| GroupElement::from_indices(x.indices().map(|t| t % q as u8));
            (q, m(a), m(b), m(c))
        });
    notes.push(run(
        "associativity",
        runner(512).run(&assoc, |(q, a, b, c)| {
            let g = group(q);
            prop_assert_eq!(
                g.mul(&g.mul(&a, &b, None), &c, None),
                g.mul(&a, &g.mul(&b, &c, None), None)
            );
            Ok(())
        }),
    )?);

    let words = (
        prop::sample::select(vec![2u32, 3, 4]),
        prop::collection::vec((1usize..=12, 0u32..4), 0..24),
    );
    notes.push(run(
        "normal form idempotence",
        runner(256).run(&words, |(q, w)| {
            let g = group(q);
            let f = g.field();
            let word: Vec<_> = w
                .iter()
                .map(|&(i, t)| (i, f.element(t % q).unwrap()))
                .collect();
            let n = g.normalize(&word, None).unwrap();
            prop_assert_eq!(g.normalize(&g.word_of(&n), None).unwrap(), n);
            Ok(())
        }),
    )?);

    for q in [2, 3, 4, 5, 7, 8, 9] {
        let c = verify::check_additive_orthogonality(&group(q).field_arc()).map_err(err)?;
        if !c.passed {
            return Err(format!("additive orthogonality q={q}: {}", c.computed));
        }
    }
    notes.push("additive orthogonality ok".into());

    let g = group(2);
    let full = Arc::new(conjugacy_classes(&g, None, false).map_err(err)?);
    let f = g.field();
    let induction = (closed_set(), prop::array::uniform12(0u32..2));
    notes.push(run(
        "induction degree",
        runner(24).run(&induction, |(domain, s)| {
            // parameters may only live on roots that are not sums inside the domain
            let free = domain.difference(rootsys::sums_within(domain));
            let params: Vec<_> = free
                .iter()
                .map(|i| (i, f.element(s[i - 1]).unwrap()))
                .collect();
            let p = g.subgroup(domain, None).unwrap();
            let lambda = LinearCharacter::new(&g, &p, &params).unwrap();
            let index = 1i64 << (12 - domain.len());
            let oracle = induce_full_sum(&lambda, &full).unwrap();
            prop_assert_eq!(oracle.degree(), index);
            let sub = ExplicitSubgroup::from_linear(&lambda, &g).unwrap();
            let explicit = induce_explicit(&sub, &full, None).unwrap();
            prop_assert_eq!(explicit.raw_values(), oracle.raw_values());
            if let Ok(fast) = induce(&lambda, &full) {
                prop_assert_eq!(fast.raw_values(), oracle.raw_values());
            }
            Ok(())
        }),
    )?);

    notes.push(run(
        "inflation kernel",
        runner(16).run(&upper_ideal(), |n| {
            let ctx = QuotientContext::new(n).unwrap();
            let quotient = Arc::new(conjugacy_classes(&g, Some(&ctx), false).unwrap());
            let alpha = n.complement().iter().last().unwrap();
            for mu in midafis(alpha, &quotient).unwrap() {
                let up = mu.inflate(&full).unwrap();
                prop_assert!(n.is_subset(up.kernel_roots()));
                prop_assert_eq!(up.degree(), mu.degree());
                prop_assert!(up.is_irreducible());
            }
            Ok(())
        }),
    )?);
    Ok(notes)
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("commutator fidelity, q = 2, 3, 4", commutators),
        ("class counts 103 / 753 / 3259", class_counts),
        ("midafi suite, q = 2, 3", midafi_suite),
        ("structural facts, q = 2, 3", structural),
        (
            "representative sets under the K action, q = 2, 3, 4",
            k_orbits,
        ),
        ("full character tables, q = 2, 3", full_tables),
        ("property suites at small q", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(notes) => println!(
                "criterion {}: PASS  {name} ({secs:.1} s)  [{}]",
                i + 1,
                notes.join("; ")
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1} s)  {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
