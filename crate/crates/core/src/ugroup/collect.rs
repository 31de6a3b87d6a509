//! Collection by adjacent transpositions.
//!
//! A pair `(j, u)(i, t)` with `i < j` is rewritten as `(i, t)(j, u)(k, v)` where
//! `x_k(v) = [x_j(u), x_i(t)]`; equal neighbours merge and zero letters vanish.
//! Every inserted letter sits strictly higher than the two it came from, so the
//! process terminates.  This route is slow and is kept as an independent check
//! on the faster insertion in [`super::UnipotentGroup::push_letter`].

use super::{GroupElement, UnipotentGroup};
use crate::rootsys::NUM_ROOTS;

pub(super) fn bubble_collect(g: &UnipotentGroup, mut w: Vec<(u8, u8)>) -> GroupElement {
    let f = g.field();
    w.retain(|&(_, t)| t != 0);
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            let (a, t) = w[i];
            let (b, u) = w[i + 1];
            if a == b {
                let s = f.add_raw(t, u);
                w.remove(i + 1);
                if s == 0 {
                    w.remove(i);
                    i = i.saturating_sub(1);
                } else {
                    w[i].1 = s;
                }
                changed = true;
                continue;
            }
            if a > b {
                w[i] = (b, u);
                w[i + 1] = (a, t);
                if let Some((k, sign)) = g.rel(a as usize, b as usize) {
                    let v = f.scalar_raw(sign as i64, f.mul_raw(t, u));
                    w.insert(i + 2, (k, v));
                }
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    let mut d = [0u8; NUM_ROOTS];
    for (a, t) in w {
        d[a as usize] = t;
    }
    GroupElement { d }
}
