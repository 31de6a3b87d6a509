//! Closed multiplication formulas.
//!
//! All structure constants are ±1, so collection can be run once over integer
//! polynomials in symbolic coordinates.  The result is a short list of monomials
//! per output coordinate, valid over every field after reducing coefficients
//! mod p.  Evaluating it costs a few dozen table lookups, far less than
//! collecting letter by letter.

use std::collections::BTreeMap;

use crate::gf::FieldSpec;
use crate::rootsys::NUM_ROOTS;

/// Variables: `a_1..a_12` (0..12), `b_1..b_12` (12..24), `t` (24).
const NV: usize = 2 * NUM_ROOTS + 1;
const T: usize = 2 * NUM_ROOTS;

type Mono = [u8; NV];

#[derive(Clone, Default, Debug, PartialEq, Eq)]
struct Poly(BTreeMap<Mono, i64>);

impl Poly {
    fn var(v: usize) -> Poly {
        let mut m = [0; NV];
        m[v] = 1;
        Poly(BTreeMap::from([(m, 1)]))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.0 {
            let e = self.0.entry(*m).or_insert(0);
            *e += c;
            if *e == 0 {
                self.0.remove(m);
            }
        }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let mut m = *m1;
                for (x, y) in m.iter_mut().zip(m2) {
                    *x += y;
                }
                out.add_assign(&Poly(BTreeMap::from([(m, c1 * c2)])));
            }
        }
        out
    }

    fn scale(&self, k: i64) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (*m, c * k)).collect())
    }
}

type Rel = [[Option<(u8, i8)>; NUM_ROOTS]; NUM_ROOTS];

/// Symbolic counterpart of `UnipotentGroup::push_letter`.
fn push(rel: &Rel, d: &mut [Poly; NUM_ROOTS], i: usize, t: Poly) {
    if t.is_zero() {
        return;
    }
    let mut tail = Vec::new();
    for (j, dj) in d.iter_mut().enumerate().skip(i + 1) {
        if !dj.is_zero() {
            tail.push((j, std::mem::take(dj)));
        }
    }
    d[i].add_assign(&t);
    for (j, u) in tail {
        push(rel, d, j, u.clone());
        if let Some((k, sign)) = rel[j][i] {
            push(rel, d, k as usize, u.mul(&t).scale(sign as i64));
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Term {
    out: u8,
    coeff: u8,
    nf: u8,
    factors: [u8; 8],
}

/// Compiled formula: output coordinate `i` is the sum of the terms with `out == i`.
#[derive(Debug, Clone)]
pub(crate) struct Formula {
    terms: Vec<Term>,
}

impl Formula {
    fn compile(polys: &[Poly; NUM_ROOTS], p: u32) -> Formula {
        let mut terms = Vec::new();
        for (out, poly) in polys.iter().enumerate() {
            for (m, &c) in &poly.0 {
                let coeff = c.rem_euclid(p as i64) as u8;
                if coeff == 0 {
                    continue;
                }
                let mut factors = [0u8; 8];
                let mut nf = 0;
                for (v, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        assert!(nf < factors.len(), "monomial degree exceeds 8");
                        factors[nf] = v as u8;
                        nf += 1;
                    }
                }
                terms.push(Term {
                    out: out as u8,
                    coeff,
                    nf: nf as u8,
                    factors,
                });
            }
        }
        Formula { terms }
    }

    /// Evaluates with `vars` laid out as `a ++ b ++ [t]`.
    #[inline]
    pub(crate) fn eval(&self, f: &FieldSpec, vars: &[u8; NV]) -> [u8; NUM_ROOTS] {
        let (add, mul) = f.tables();
        let mut out = [0u8; NUM_ROOTS];
        for term in &self.terms {
            // prime-field scalars have index equal to their residue
            let mut v = term.coeff;
            for &x in &term.factors[..term.nf as usize] {
                v = mul[(v as usize) << 8 | vars[x as usize] as usize];
            }
            let o = &mut out[term.out as usize];
            *o = add[(*o as usize) << 8 | v as usize];
        }
        out
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }
}

/// Formulas for `a·b`, `a^-1` and `x_i(-t) a x_i(t)` for the simple roots.
#[derive(Debug, Clone)]
pub(crate) struct Formulas {
    pub mul: Formula,
    pub inv: Formula,
    pub conj_simple: [Formula; 4],
}

impl Formulas {
    pub fn derive(rel: &Rel, p: u32) -> Formulas {
        let a = |i: usize| Poly::var(i);
        let b = |i: usize| Poly::var(NUM_ROOTS + i);

        let mut d: [Poly; NUM_ROOTS] = std::array::from_fn(a);
        for i in 0..NUM_ROOTS {
            push(rel, &mut d, i, b(i));
        }
        let mul = Formula::compile(&d, p);

        let mut d: [Poly; NUM_ROOTS] = Default::default();
        for i in (0..NUM_ROOTS).rev() {
            push(rel, &mut d, i, a(i).scale(-1));
        }
        let inv = Formula::compile(&d, p);

        let conj_simple = std::array::from_fn(|i| {
            let mut d: [Poly; NUM_ROOTS] = Default::default();
            d[i] = Poly::var(T).scale(-1);
            for j in 0..NUM_ROOTS {
                push(rel, &mut d, j, a(j));
            }
            push(rel, &mut d, i, Poly::var(T));
            Formula::compile(&d, p)
        });
        Formulas {
            mul,
            inv,
            conj_simple,
        }
    }
}

#[inline]
pub(crate) fn vars_ab(a: &[u8; NUM_ROOTS], b: &[u8; NUM_ROOTS]) -> [u8; NV] {
    let mut v = [0u8; NV];
    v[..NUM_ROOTS].copy_from_slice(a);
    v[NUM_ROOTS..T].copy_from_slice(b);
    v
}

#[inline]
pub(crate) fn vars_at(a: &[u8; NUM_ROOTS], t: u8) -> [u8; NV] {
    let mut v = [0u8; NV];
    v[..NUM_ROOTS].copy_from_slice(a);
    v[T] = t;
    v
}
