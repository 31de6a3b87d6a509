use std::collections::HashSet;
use std::sync::OnceLock;

use d4_unipotent::chars::{
    build_all, build_family, descriptors, induce, induce_full_sum, ClassCache, ClassFunction,
    FamilyId, LinearCharacter,
};
use d4_unipotent::rootsys::{self, RootSet};
use d4_unipotent::ugroup::UnipotentGroup;
use proptest::prelude::*;

fn table(q: u32) -> (UnipotentGroup, Vec<ClassFunction>) {
    let g = UnipotentGroup::with_order(q).unwrap();
    let t = build_all(&ClassCache::new(g.clone(), false)).unwrap();
    assert!(t.checks.passed());
    (g, t.characters)
}

fn table_q2() -> &'static (UnipotentGroup, Vec<ClassFunction>) {
    static T: OnceLock<(UnipotentGroup, Vec<ClassFunction>)> = OnceLock::new();
    T.get_or_init(|| table(2))
}

fn multiplicity(a: &ClassFunction, b: &ClassFunction) -> i64 {
    let ip = a
        .inner_product(b)
        .unwrap()
        .as_rational()
        .expect("rational inner product");
    assert!(ip.is_integer(), "non-integral multiplicity {ip}");
    i64::try_from(ip.to_integer()).unwrap()
}

fn closed_set() -> impl Strategy<Value = RootSet> {
    (1u16..1 << 12)
        .prop_map(RootSet::from_bits)
        .prop_filter("closed", |s| rootsys::is_closed(*s))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    /// An induced character is the sum of the irreducibles weighted by their
    /// multiplicities; this exercises induction and completeness together.
    #[test]
    fn induced_characters_decompose_over_the_table(domain in closed_set(), s in prop::array::uniform12(0u32..2)) {
        let (g, chars) = table_q2();
        let f = g.field();
        let full = chars[0].ambient().clone();
        let free = domain.difference(rootsys::sums_within(domain));
        let params: Vec<_> = free.iter().map(|i| (i, f.element(s[i - 1]).unwrap())).collect();
        let lambda = LinearCharacter::new(g, &g.subgroup(domain, None).unwrap(), &params).unwrap();
        let induced = induce_full_sum(&lambda, &full).unwrap();

        let mut acc: Option<ClassFunction> = None;
        let mut degree = 0;
        for chi in chars {
            let m = multiplicity(&induced, chi);
            prop_assert!(m >= 0);
            degree += m * chi.degree();
            for _ in 0..m {
                acc = Some(match acc { None => chi.clone(), Some(a) => a.add(chi).unwrap() });
            }
        }
        prop_assert_eq!(degree, induced.degree());
        let acc = acc.unwrap();
        prop_assert_eq!(acc.raw_values(), induced.raw_values());
    }
}

#[test]
fn f12_is_induction_from_v12_with_free_simple_parameters() {
    for q in [2u32, 3] {
        let g = UnipotentGroup::with_order(q).unwrap();
        let cache = ClassCache::new(g.clone(), false);
        let desc = descriptors()
            .into_iter()
            .find(|d| d.id == FamilyId::F12)
            .unwrap();
        let family = build_family(&desc, &cache).unwrap();
        let built: HashSet<Vec<i64>> = family
            .characters
            .iter()
            .map(|c| c.raw_values().to_vec())
            .collect();
        assert_eq!(built.len(), family.characters.len());

        let full = cache.full().unwrap();
        let v12 = g.subgroup(rootsys::v_alpha(12).unwrap(), None).unwrap();
        let f = g.field();
        let mut direct = HashSet::new();
        for s in f.elements().skip(1) {
            for a1 in f.elements() {
                for a2 in f.elements() {
                    for a4 in f.elements() {
                        let l =
                            LinearCharacter::new(&g, &v12, &[(12, s), (1, a1), (2, a2), (4, a4)])
                                .unwrap();
                        let chi = induce(&l, &full).unwrap();
                        assert_eq!(chi.degree(), (q as i64).pow(4));
                        direct.insert(chi.raw_values().to_vec());
                    }
                }
            }
        }
        assert_eq!(direct, built, "q = {q}");
    }
}

#[test]
fn tensoring_with_linear_characters_permutes_the_table() {
    let (g, chars) = table_q2();
    let values: HashSet<Vec<i64>> = chars.iter().map(|c| c.raw_values().to_vec()).collect();
    let whole = g.subgroup(RootSet::ALL, None).unwrap();
    let f = g.field();
    for bits in 0..16u32 {
        let params: Vec<_> = (1..=4)
            .map(|i| (i, f.element((bits >> (i - 1)) & 1).unwrap()))
            .collect();
        let beta = LinearCharacter::new(g, &whole, &params).unwrap();
        for chi in chars {
            let t = chi.tensor_linear(&beta).unwrap();
            assert!(values.contains(t.raw_values()));
            // beta is trivial on the non-simple root subgroups
            let non_simple = RootSet::from_bits(0xf).complement();
            assert_eq!(
                t.kernel_roots().intersection(non_simple),
                chi.kernel_roots().intersection(non_simple)
            );
        }
    }
}

#[test]
fn complex_conjugation_preserves_the_table_at_odd_q() {
    let (_, chars) = table(3);
    let values: HashSet<Vec<i64>> = chars.iter().map(|c| c.raw_values().to_vec()).collect();
    for chi in &chars {
        let c = chi.conjugate();
        assert!(values.contains(c.raw_values()));
        assert_eq!(c.kernel_roots(), chi.kernel_roots());
    }
    let real = chars
        .iter()
        .filter(|c| c.conjugate().raw_values() == c.raw_values())
        .count();
    // only the trivial character is real-valued in a group of odd order
    assert_eq!(real, 1);
}
