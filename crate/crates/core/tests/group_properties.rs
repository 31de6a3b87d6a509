use d4_unipotent::gf::FieldSpec;
use d4_unipotent::rootsys::{self, RootSet};
use d4_unipotent::ugroup::{GroupElement, QuotientContext, UnipotentGroup};
use proptest::prelude::*;

fn grp(q: u32) -> UnipotentGroup {
    UnipotentGroup::with_order(q).unwrap()
}

fn elem(q: u32) -> impl Strategy<Value = [u8; 12]> {
    prop::array::uniform12(0..q as u8)
}

fn x(_g: &UnipotentGroup, i: usize, t: u8) -> GroupElement {
    let mut d = [0; 12];
    d[i - 1] = t;
    GroupElement::from_indices(d)
}

fn word_product(g: &UnipotentGroup, a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut w = g.word_of(a);
    w.extend(g.word_of(b));
    g.normalize(&w, None).unwrap()
}

proptest! {
    #[test]
    fn multiplication_agrees_with_word_collection(q in prop::sample::select(vec![2u32, 3, 4, 5]), a in elem(5), b in elem(5)) {
        let g = grp(q);
        let a = GroupElement::from_indices(a.map(|c| c % q as u8));
        let b = GroupElement::from_indices(b.map(|c| c % q as u8));
        let by_formula = g.mul(&a, &b, None);
        prop_assert_eq!(by_formula, word_product(&g, &a, &b));
        prop_assert_eq!(by_formula, g.mul_by_insertion(&a, &b));
        prop_assert_eq!(g.inv(&a, None), g.inv_by_insertion(&a));
    }

    #[test]
    fn associativity(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), a in elem(9), b in elem(9), c in elem(9)) {
        let g = grp(q);
        let [a, b, c] = [a, b, c].map(|v| GroupElement::from_indices(v.map(|t| t % q as u8)));
        prop_assert_eq!(g.mul(&g.mul(&a, &b, None), &c, None), g.mul(&a, &g.mul(&b, &c, None), None));
    }

    #[test]
    fn inverse_and_normal_form(q in prop::sample::select(vec![2u32, 3, 4, 5]), a in elem(5)) {
        let g = grp(q);
        let a = GroupElement::from_indices(a.map(|c| c % q as u8));
        prop_assert!(g.mul(&a, &g.inv(&a, None), None).is_identity());
        prop_assert!(g.mul(&g.inv(&a, None), &a, None).is_identity());
        prop_assert_eq!(g.normalize(&g.word_of(&a), None).unwrap(), a);
        prop_assert_eq!(g.unpack(g.pack(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn scrambled_words_collect_to_their_product(q in prop::sample::select(vec![2u32, 3, 4]), w in prop::collection::vec((1usize..=12, 1u8..4), 0..16)) {
        let g = grp(q);
        let f = g.field();
        let word: Vec<_> = w.iter().map(|&(i, t)| (i, f.element((t % q as u8) as u32).unwrap())).collect();
        let mut acc = g.identity();
        for &(i, t) in &word {
            acc = g.mul(&acc, &g.root_element(i, t).unwrap(), None);
        }
        let n = g.normalize(&word, None).unwrap();
        prop_assert_eq!(n, acc);
        // idempotent
        prop_assert_eq!(g.normalize(&g.word_of(&n), None).unwrap(), n);
    }

    #[test]
    fn quotient_multiplication_is_multiply_then_project(a in elem(3), b in elem(3), k in 0usize..4) {
        let g = grp(3);
        let killed: RootSet = [[12].as_slice(), &[11, 12], &[8, 9, 10, 11, 12], &[5, 6, 7, 8, 9, 10, 11, 12]][k].iter().copied().collect();
        let ctx = QuotientContext::new(killed).unwrap();
        let a = GroupElement::from_indices(a);
        let b = GroupElement::from_indices(b);
        let full = g.project(&g.mul(&a, &b, None), Some(&ctx));
        prop_assert_eq!(g.mul(&a, &b, Some(&ctx)), full);
    }
}

#[test]
fn commutators_reproduce_the_relation_table() {
    for q in [2, 3, 4] {
        let g = grp(q);
        let f = g.field().clone();
        for i in 1..=12 {
            for j in i + 1..=12 {
                let rel = rootsys::comm(i, j).unwrap();
                for t in 0..q as u8 {
                    for u in 0..q as u8 {
                        let c = g.commutator(&x(&g, i, t), &x(&g, j, u), None);
                        let expected = match rel {
                            Some(r) => x(&g, r.k, f.scalar_raw(r.sign as i64, f.mul_raw(t, u))),
                            None => g.identity(),
                        };
                        assert_eq!(c, expected, "q={q} [x{i}({t}), x{j}({u})]");
                    }
                }
            }
        }
    }
}

#[test]
fn upper_closed_sets_give_normal_subgroups() {
    let candidates: Vec<RootSet> = (1u16..(1 << 12))
        .map(RootSet::from_bits)
        .filter(|s| rootsys::is_upper_closed(*s))
        .collect();
    assert!(candidates.len() > 10);
    for q in [2, 3] {
        let g = grp(q);
        for &n in &candidates {
            let p = g.subgroup(n, None).unwrap();
            if p.order(q) > 3u128.pow(6) {
                continue;
            }
            for e in g.enumerate(&p).unwrap() {
                for i in 1..=12 {
                    for t in 1..q as u8 {
                        let c = g.conj(&e, &x(&g, i, t), None);
                        assert!(p.contains(&c), "q={q} N={n:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn center_is_the_highest_root_subgroup() {
    for q in [2, 3] {
        let g = grp(q);
        let u = g.subgroup(RootSet::ALL, None).unwrap();
        let gens = g.generators(&u);
        let center: Vec<GroupElement> = g
            .enumerate(&u)
            .unwrap()
            .filter(|e| gens.iter().all(|h| g.conj(e, h, None) == *e))
            .collect();
        let expected: Vec<GroupElement> = (0..q as u8).map(|t| x(&g, 12, t)).collect();
        assert_eq!(center, expected);
    }
}

#[test]
fn group_orders() {
    for q in [2, 3, 4, 5] {
        let g = grp(q);
        assert_eq!(g.order(None), (q as u128).pow(12));
        for a in 1..=12 {
            let s = rootsys::hook(a).unwrap();
            assert_eq!(
                g.subgroup(s, None).unwrap().order(q),
                (q as u128).pow(s.len() as u32)
            );
        }
    }
}

/// Left conjugation by `x_1(r) x_2(s) x_4(t)` on `x_3(d_3) x_5(d_5) ... x_10(d_10)`
/// modulo `X_11 X_12`, written out coordinate by coordinate.
#[test]
fn conjugation_formula_in_the_quotient_by_x11_x12() {
    for q in [2, 3, 4, 5] {
        let g = grp(q);
        let f: FieldSpec = g.field().clone();
        let ctx = QuotientContext::new([11, 12].into_iter().collect()).unwrap();
        let (add, sub, mul) = (
            |a, b| f.add_raw(a, b),
            |a, b| f.sub_raw(a, b),
            |a, b| f.mul_raw(a, b),
        );
        let samples: Vec<[u8; 10]> = (0..200u64)
            .map(|n| {
                let mut v = [0u8; 10];
                let mut s = n.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (q as u64);
                for slot in v.iter_mut() {
                    s ^= s >> 13;
                    s = s.wrapping_mul(0x2545_F491_4F6C_DD1D);
                    *slot = (s % q as u64) as u8;
                }
                v
            })
            .collect();
        for v in samples {
            let [r, s, t, d3, d5, d6, d7, d8, d9, d10] = v;
            let h = g.mul(&g.mul(&x(&g, 1, r), &x(&g, 2, s), None), &x(&g, 4, t), None);
            let e = GroupElement::from_indices([0, 0, d3, 0, d5, d6, d7, d8, d9, d10, 0, 0]);
            let left = g.conj(&e, &g.inv(&h, None), Some(&ctx));
            let by_insertion =
                g.mul_by_insertion(&g.mul_by_insertion(&h, &e), &g.inv_by_insertion(&h));
            assert_eq!(g.project(&by_insertion, Some(&ctx)), left);
            let expected = [
                0,
                0,
                d3,
                0,
                add(d5, mul(r, d3)),
                add(d6, mul(s, d3)),
                sub(d7, mul(t, d3)),
                sub(sub(sub(d8, mul(s, d5)), mul(r, d6)), mul(mul(r, s), d3)),
                sub(add(sub(d9, mul(t, d5)), mul(r, d7)), mul(mul(r, t), d3)),
                sub(add(sub(d10, mul(t, d6)), mul(s, d7)), mul(mul(s, t), d3)),
                0,
                0,
            ];
            assert_eq!(left.indices(), expected, "q={q} r,s,t={r},{s},{t}");
        }
    }
}
