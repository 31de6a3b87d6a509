//! The seventeen families of irreducible characters, built constructively.
//!
//! Each family is realised by inducing linear characters of a designated
//! pattern subgroup of a quotient `U/N` (or, for the even `F_{8,9,10}` block,
//! of an inertia group) and inflating to U.  Parameters are enumerated over a
//! bounded space; results are filtered by norm and kernel signature and
//! deduplicated by value vector.  The expected counts are checked, never used
//! to steer the construction.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{conjugacy_classes, ClassData, ClassError, Parity};
use crate::rootsys::{RootSet, NUM_ROOTS};
use crate::ugroup::{GroupElement, QuotientContext, UnipotentGroup};

use super::explicit::{extend_to_inertia, ExplicitSubgroup};
use super::induce::{induce_explicit, InductionPlan};
use super::korbit::{claimed_representatives, KAction, A_ROOTS};
use super::{midafis, CharError, ClassFunction, LinearCharacter};

/// Class data of U and its quotients, computed once per killed set.
pub struct ClassCache {
    group: UnipotentGroup,
    allow_large: bool,
    map: Mutex<HashMap<RootSet, Arc<ClassData>>>,
}

impl ClassCache {
    pub fn new(group: UnipotentGroup, allow_large: bool) -> Self {
        ClassCache {
            group,
            allow_large,
            map: Mutex::new(HashMap::new()),
        }
    }

    /// Seeds the cache with already computed class data.
    pub fn insert(&self, cd: Arc<ClassData>) {
        self.map.lock().unwrap().insert(cd.killed(), cd);
    }

    pub fn group(&self) -> &UnipotentGroup {
        &self.group
    }

    pub fn allow_large(&self) -> bool {
        self.allow_large
    }

    pub fn get(&self, killed: RootSet) -> Result<Arc<ClassData>, CharError> {
        if let Some(cd) = self.map.lock().unwrap().get(&killed) {
            return Ok(cd.clone());
        }
        let ctx = QuotientContext::new(killed)?;
        let ctx = (!killed.is_empty()).then_some(ctx);
        let cd = Arc::new(conjugacy_classes(
            &self.group,
            ctx.as_ref(),
            self.allow_large,
        )?);
        Ok(self.map.lock().unwrap().entry(killed).or_insert(cd).clone())
    }

    pub fn full(&self) -> Result<Arc<ClassData>, CharError> {
        self.get(RootSet::EMPTY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    F12,
    F11,
    F8910Odd,
    F8910Even,
    F89,
    F810,
    F910,
    F8,
    F9,
    F10,
    F567,
    F56,
    F57,
    F67,
    F5,
    F6,
    F7,
    Lin,
}

impl FamilyId {
    pub const ALL: [FamilyId; 18] = [
        FamilyId::F12,
        FamilyId::F11,
        FamilyId::F8910Odd,
        FamilyId::F8910Even,
        FamilyId::F89,
        FamilyId::F810,
        FamilyId::F910,
        FamilyId::F8,
        FamilyId::F9,
        FamilyId::F10,
        FamilyId::F567,
        FamilyId::F56,
        FamilyId::F57,
        FamilyId::F67,
        FamilyId::F5,
        FamilyId::F6,
        FamilyId::F7,
        FamilyId::Lin,
    ];

    pub fn name(self) -> &'static str {
        use FamilyId::*;
        match self {
            F12 => "F12",
            F11 => "F11",
            F8910Odd => "F8,9,10-odd",
            F8910Even => "F8,9,10-even",
            F89 => "F8,9",
            F810 => "F8,10",
            F910 => "F9,10",
            F8 => "F8",
            F9 => "F9",
            F10 => "F10",
            F567 => "F5,6,7",
            F56 => "F5,6",
            F57 => "F5,7",
            F67 => "F6,7",
            F5 => "F5",
            F6 => "F6",
            F7 => "F7",
            Lin => "Flin",
        }
    }

    /// Accepts the display names, case-insensitively, with or without the
    /// commas and the leading `F`.
    pub fn parse(s: &str) -> Option<FamilyId> {
        let norm = |x: &str| {
            x.to_ascii_lowercase()
                .chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect::<String>()
        };
        let key = norm(s);
        let key = key.strip_prefix('f').unwrap_or(&key).to_string();
        FamilyId::ALL.into_iter().find(|id| {
            let n = norm(id.name());
            n.strip_prefix('f').unwrap_or(&n) == key
        })
    }
}

/// Degree of a family's characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degree {
    QPow(u32),
    HalfQCubed,
}

impl Degree {
    pub fn value(self, q: u64) -> u64 {
        match self {
            Degree::QPow(e) => q.pow(e),
            Degree::HalfQCubed => q.pow(3) / 2,
        }
    }

    pub fn label(self) -> String {
        match self {
            Degree::QPow(0) => "1".into(),
            Degree::QPow(1) => "q".into(),
            Degree::QPow(e) => format!("q^{e}"),
            Degree::HalfQCubed => "q^3/2".into(),
        }
    }
}

/// `coeff · q^q_pow · (q-1)^v_pow`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Count {
    pub coeff: u64,
    pub q_pow: u32,
    pub v_pow: u32,
}

impl Count {
    const fn new(coeff: u64, q_pow: u32, v_pow: u32) -> Count {
        Count {
            coeff,
            q_pow,
            v_pow,
        }
    }

    pub fn eval(self, q: u64) -> u64 {
        self.coeff * q.pow(self.q_pow) * (q - 1).pow(self.v_pow)
    }

    pub fn label(self) -> String {
        let mut s = String::new();
        if self.coeff != 1 {
            s.push_str(&self.coeff.to_string());
        }
        match self.q_pow {
            0 => {}
            1 => s.push('q'),
            e => s.push_str(&format!("q^{e}")),
        }
        match self.v_pow {
            0 => {}
            1 => s.push_str("(q-1)"),
            e => s.push_str(&format!("(q-1)^{e}")),
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub id: FamilyId,
    pub name: &'static str,
    /// Roots whose root subgroups lie in every character's kernel.
    pub required_kernel: RootSet,
    /// Roots whose root subgroups lie in no character's kernel.
    pub required_nonkernel: RootSet,
    pub parity: Option<Parity>,
    pub expected: Vec<(Degree, Count)>,
}

impl FamilyDescriptor {
    pub fn applies_to(&self, q: u64) -> bool {
        self.parity.is_none_or(|p| p == Parity::of(q))
    }

    pub fn matches_kernel(&self, kernel: RootSet) -> bool {
        self.required_kernel.is_subset(kernel) && self.required_nonkernel.is_disjoint(kernel)
    }

    pub fn expected_total(&self, q: u64) -> u64 {
        self.expected.iter().map(|(_, c)| c.eval(q)).sum()
    }
}

fn rs(v: &[usize]) -> RootSet {
    v.iter().copied().collect()
}

/// The family table: kernel conditions, degrees and counts.
pub fn descriptors() -> Vec<FamilyDescriptor> {
    use Degree::*;
    use FamilyId::*;
    let q4 = QPow(4);
    let q3 = QPow(3);
    let q2 = QPow(2);
    let q1 = QPow(1);
    let row =
        |id: FamilyId, ker: &[usize], non: &[usize], parity, expected: Vec<(Degree, Count)>| {
            FamilyDescriptor {
                id,
                name: id.name(),
                required_kernel: rs(ker),
                required_nonkernel: rs(non),
                parity,
                expected,
            }
        };
    let pair = || vec![(q2, Count::new(1, 2, 2)), (q3, Count::new(1, 0, 3))];
    let single = || vec![(q2, Count::new(1, 2, 1)), (q3, Count::new(1, 0, 2))];
    vec![
        row(F12, &[], &[12], None, vec![(q4, Count::new(1, 3, 1))]),
        row(F11, &[12], &[11], None, vec![(q3, Count::new(1, 4, 1))]),
        row(
            F8910Odd,
            &[11, 12],
            &[8, 9, 10],
            Some(Parity::Odd),
            vec![(q3, Count::new(1, 1, 3))],
        ),
        row(
            F8910Even,
            &[11, 12],
            &[8, 9, 10],
            Some(Parity::Even),
            vec![(q3, Count::new(1, 0, 3)), (HalfQCubed, Count::new(4, 0, 4))],
        ),
        row(F89, &[10, 11, 12], &[8, 9], None, pair()),
        row(F810, &[9, 11, 12], &[8, 10], None, pair()),
        row(F910, &[8, 11, 12], &[9, 10], None, pair()),
        row(F8, &[9, 10, 11, 12], &[8], None, single()),
        row(F9, &[8, 10, 11, 12], &[9], None, single()),
        row(F10, &[8, 9, 11, 12], &[10], None, single()),
        row(
            F567,
            &[8, 9, 10, 11, 12],
            &[5, 6, 7],
            None,
            vec![(q1, Count::new(1, 2, 3))],
        ),
        row(
            F56,
            &[7, 8, 9, 10, 11, 12],
            &[5, 6],
            None,
            vec![(q1, Count::new(1, 2, 2))],
        ),
        row(
            F57,
            &[6, 8, 9, 10, 11, 12],
            &[5, 7],
            None,
            vec![(q1, Count::new(1, 2, 2))],
        ),
        row(
            F67,
            &[5, 8, 9, 10, 11, 12],
            &[6, 7],
            None,
            vec![(q1, Count::new(1, 2, 2))],
        ),
        row(
            F5,
            &[6, 7, 8, 9, 10, 11, 12],
            &[5],
            None,
            vec![(q1, Count::new(1, 2, 1))],
        ),
        row(
            F6,
            &[5, 7, 8, 9, 10, 11, 12],
            &[6],
            None,
            vec![(q1, Count::new(1, 2, 1))],
        ),
        row(
            F7,
            &[5, 6, 8, 9, 10, 11, 12],
            &[7],
            None,
            vec![(q1, Count::new(1, 2, 1))],
        ),
        row(
            Lin,
            &[5, 6, 7, 8, 9, 10, 11, 12],
            &[],
            None,
            vec![(QPow(0), Count::new(1, 4, 0))],
        ),
    ]
}

/// Degree multiplicities of the full table as polynomials in `v = q - 1`,
/// evaluated at `q`; coinciding degrees are merged.
pub fn expected_degree_multiplicities(q: u64) -> BTreeMap<u64, u64> {
    let v = q - 1;
    let poly = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &k| acc * v + k);
    let even = q.is_multiple_of(2);
    let mut rows = vec![
        (q.pow(4), poly(&[0, 1, 3, 3, 1])),
        (
            q.pow(3),
            if even {
                poly(&[0, 1, 7, 10, 4, 1])
            } else {
                poly(&[0, 1, 7, 10, 5, 1])
            },
        ),
        (q.pow(2), poly(&[0, 3, 9, 9, 3])),
        (q, poly(&[0, 3, 9, 10, 5, 1])),
        (1, poly(&[1, 4, 6, 4, 1])),
    ];
    if even {
        rows.push((q.pow(3) / 2, 4 * v.pow(4)));
    }
    let mut out = BTreeMap::new();
    for (d, c) in rows {
        *out.entry(d).or_insert(0) += c;
    }
    out
}

/// One block of a family: induce from `domain` in `U/X_killed`, with
/// parameters nonzero on `nonzero`, arbitrary on `free`, zero elsewhere.
struct Part {
    killed: &'static [usize],
    domain: &'static [usize],
    nonzero: &'static [usize],
    free: &'static [usize],
}

enum Step {
    Induced(Part),
    /// Midafis `μ_{12,a}` times linear characters with parameters on 1, 2, 4.
    Gallagher12,
    /// Extensions to inertia groups of the `λ_{x,0,0,c,d,e,f}`, `c ≠ 0`.
    EvenInertia,
}

fn induced(
    killed: &'static [usize],
    domain: &'static [usize],
    nonzero: &'static [usize],
    free: &'static [usize],
) -> Step {
    Step::Induced(Part {
        killed,
        domain,
        nonzero,
        free,
    })
}

fn recipe(id: FamilyId) -> Vec<Step> {
    use FamilyId::*;
    const B: &[usize] = &[1, 2, 4, 5, 6, 7];
    match id {
        F12 => vec![Step::Gallagher12],
        F11 => vec![induced(
            &[12],
            &[3, 5, 6, 7, 8, 9, 10, 11],
            &[11],
            &[3, 5, 6, 7],
        )],
        F8910Odd => vec![induced(
            &[11, 12],
            &[3, 5, 6, 7, 8, 9, 10],
            &[8, 9, 10],
            &[3],
        )],
        F8910Even => vec![
            induced(&[11, 12], &[3, 5, 6, 7, 8, 9, 10], &[8, 9, 10], &[]),
            Step::EvenInertia,
        ],
        F89 => vec![
            induced(&[10, 11, 12], &[2, 3, 4, 6, 7, 8, 9], &[8, 9], &[3, 4]),
            induced(&[10, 11, 12], &[3, 5, 6, 7, 8, 9], &[8, 9], &[3, 5, 6, 7]),
        ],
        F810 => vec![
            induced(&[9, 11, 12], &[1, 3, 4, 5, 7, 8, 10], &[8, 10], &[3, 4]),
            induced(&[9, 11, 12], &[3, 5, 6, 7, 8, 10], &[8, 10], &[3, 5, 6, 7]),
        ],
        F910 => vec![
            induced(&[8, 11, 12], &[1, 2, 3, 5, 6, 9, 10], &[9, 10], &[1, 3]),
            induced(&[8, 11, 12], &[3, 5, 6, 7, 9, 10], &[9, 10], &[3, 5, 6, 7]),
        ],
        F8 => vec![
            induced(&[9, 10, 11, 12], &[3, 4, 5, 6, 7, 8], &[8], &[3, 4]),
            induced(&[9, 10, 11, 12], &[3, 5, 6, 7, 8], &[8], &[3, 5, 6, 7]),
        ],
        F9 => vec![
            induced(&[8, 10, 11, 12], &[2, 3, 5, 6, 7, 9], &[9], &[2, 3]),
            induced(&[8, 10, 11, 12], &[3, 5, 6, 7, 9], &[9], &[3, 5, 6, 7]),
        ],
        F10 => vec![
            induced(&[8, 9, 11, 12], &[1, 3, 5, 6, 7, 10], &[10], &[1, 3]),
            induced(&[8, 9, 11, 12], &[3, 5, 6, 7, 10], &[10], &[3, 5, 6, 7]),
        ],
        F567 => vec![induced(&[8, 9, 10, 11, 12], B, &[5, 6, 7], &[1, 2, 4])],
        F56 => vec![induced(&[7, 8, 9, 10, 11, 12], B, &[5, 6], &[1, 2, 4])],
        F57 => vec![induced(&[6, 8, 9, 10, 11, 12], B, &[5, 7], &[1, 2, 4])],
        F67 => vec![induced(&[5, 8, 9, 10, 11, 12], B, &[6, 7], &[1, 2, 4])],
        F5 => vec![induced(&[6, 7, 8, 9, 10, 11, 12], B, &[5], &[1, 2, 4])],
        F6 => vec![induced(&[5, 7, 8, 9, 10, 11, 12], B, &[6], &[1, 2, 4])],
        F7 => vec![induced(&[5, 6, 8, 9, 10, 11, 12], B, &[7], &[1, 2, 4])],
        Lin => vec![induced(
            &[5, 6, 7, 8, 9, 10, 11, 12],
            &[1, 2, 3, 4],
            &[],
            &[1, 2, 3, 4],
        )],
    }
}

/// Outcome of one block of a family.
#[derive(Debug, Clone, Serialize)]
pub struct PartReport {
    pub degree: String,
    pub degree_value: u64,
    pub expected_count: String,
    pub expected: u64,
    pub found: u64,
    pub candidates: u64,
    pub reducible: u64,
    pub wrong_kernel: u64,
    pub duplicates: u64,
    pub degrees_ok: bool,
}

impl PartReport {
    pub fn passed(&self) -> bool {
        self.degrees_ok && self.found == self.expected
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: &'static str,
    pub q: u32,
    pub parts: Vec<PartReport>,
    #[serde(skip)]
    pub id: Option<FamilyId>,
    /// The characters, inflated to U, in construction order.
    #[serde(skip)]
    pub characters: Vec<ClassFunction>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(PartReport::passed)
    }
}

/// Candidate characters of one block, on their own ambient, in a fixed order.
struct Candidates {
    ambient: Arc<ClassData>,
    list: Vec<ClassFunction>,
}

fn odometer(q: u8, nonzero: usize, free: usize) -> Vec<Vec<u8>> {
    let lows: Vec<u8> = (0..nonzero + free).map(|i| u8::from(i < nonzero)).collect();
    let mut cur = lows.clone();
    let mut out = Vec::new();
    if nonzero + free == 0 {
        return vec![Vec::new()];
    }
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = lows[i];
            i += 1;
        }
    }
}

fn induced_candidates(part: &Part, cache: &ClassCache) -> Result<Candidates, CharError> {
    let ambient = cache.get(rs(part.killed))?;
    let plan = InductionPlan::new(ambient.clone(), rs(part.domain))?;
    let q = ambient.q() as u8;
    let field = ambient.group().field_arc();
    let roots: Vec<usize> = part.nonzero.iter().chain(part.free).copied().collect();
    let list = odometer(q, part.nonzero.len(), part.free.len())
        .into_par_iter()
        .map(|vals| {
            let mut params = [0u8; NUM_ROOTS];
            for (&r, &v) in roots.iter().zip(&vals) {
                params[r - 1] = v;
            }
            let l =
                LinearCharacter::from_raw(field.clone(), plan.domain(), ambient.killed(), params)?;
            plan.induce(&l)
        })
        .collect::<Result<Vec<_>, CharError>>()?;
    Ok(Candidates { ambient, list })
}

fn gallagher12(cache: &ClassCache) -> Result<Candidates, CharError> {
    let ambient = cache.full()?;
    let q = ambient.q() as u8;
    let field = ambient.group().field_arc();
    let mut list = Vec::new();
    for mu in midafis(12, &ambient)? {
        for b in odometer(q, 0, 3) {
            let mut params = [0u8; NUM_ROOTS];
            params[0] = b[0];
            params[1] = b[1];
            params[3] = b[2];
            let beta =
                LinearCharacter::from_raw(field.clone(), RootSet::ALL, RootSet::EMPTY, params)?;
            list.push(mu.tensor_linear(&beta)?);
        }
    }
    Ok(Candidates { ambient, list })
}

fn even_inertia(cache: &ClassCache) -> Result<Candidates, CharError> {
    let killed = rs(&[11, 12]);
    let ambient = cache.get(killed)?;
    let group = ambient.group();
    let field = group.field();
    let act = KAction::new(group);
    let domain = rs(&A_ROOTS);
    let basis: Vec<u8> = (0..field.n()).map(|k| field.p().pow(k) as u8).collect();
    let a_gens: Vec<GroupElement> = A_ROOTS
        .iter()
        .flat_map(|&r| basis.iter().map(move |&b| (r, b)))
        .map(|(r, b)| group.root_element_raw(r, b))
        .collect();
    let mut list = Vec::new();
    for (s, stab) in claimed_representatives(field) {
        if stab != 2 {
            continue;
        }
        let mut params = [0u8; NUM_ROOTS];
        for (i, &r) in A_ROOTS.iter().enumerate() {
            params[r - 1] = s[i];
        }
        let lambda = LinearCharacter::from_raw(group.field_arc(), domain, killed, params)?;
        let st = act.stabilizer(&s);
        if st.len() != 2 {
            return Err(CharError::BadIndex(st.len() as u64));
        }
        let k0 = KAction::element_of(act.ks[st[1]]);
        let mut gens = a_gens.clone();
        gens.push(k0);
        let inertia = ExplicitSubgroup::from_generators(group, killed, &gens, None)?;
        let mut used: HashSet<GroupElement> = HashSet::new();
        let mut reps = Vec::new();
        for &k in &act.ks {
            let e = KAction::element_of(k);
            if used.insert(e) {
                used.insert(group.mul(&e, &k0, None));
                reps.push(e);
            }
        }
        for mu in extend_to_inertia(&lambda, &inertia, group)? {
            list.push(induce_explicit(&mu, &ambient, Some(&reps))?);
        }
    }
    Ok(Candidates { ambient, list })
}

/// Builds one family and checks it against its descriptor.
pub fn build_family(
    desc: &FamilyDescriptor,
    cache: &ClassCache,
) -> Result<FamilyReport, CharError> {
    let q = cache.group().q();
    if !desc.applies_to(q as u64) {
        return Err(ClassError::ParityMismatch { q: q as u64 }.into());
    }
    let full = cache.full()?;
    let mut parts = Vec::new();
    let mut characters = Vec::new();
    for (step, &(degree, count)) in recipe(desc.id).iter().zip(&desc.expected) {
        let cands = match step {
            Step::Induced(part) => induced_candidates(part, cache)?,
            Step::Gallagher12 => gallagher12(cache)?,
            Step::EvenInertia => even_inertia(cache)?,
        };
        let checked: Vec<(bool, bool)> = cands
            .list
            .par_iter()
            .map(|chi| {
                (
                    chi.is_irreducible(),
                    desc.matches_kernel(chi.kernel_roots()),
                )
            })
            .collect();
        let mut seen: HashSet<&[i64]> = HashSet::new();
        let (mut reducible, mut wrong_kernel, mut duplicates) = (0, 0, 0);
        let mut kept = Vec::new();
        for (chi, &(irr, ker)) in cands.list.iter().zip(&checked) {
            if !irr {
                reducible += 1;
            } else if !ker {
                wrong_kernel += 1;
            } else if !seen.insert(chi.raw_values()) {
                duplicates += 1;
            } else {
                kept.push(chi);
            }
        }
        let want = degree.value(q as u64);
        let degrees_ok = kept.iter().all(|c| c.degree() == want as i64);
        parts.push(PartReport {
            degree: degree.label(),
            degree_value: want,
            expected_count: count.label(),
            expected: count.eval(q as u64),
            found: kept.len() as u64,
            candidates: cands.list.len() as u64,
            reducible,
            wrong_kernel,
            duplicates,
            degrees_ok,
        });
        for chi in kept {
            let lifted = if Arc::ptr_eq(&cands.ambient, &full) {
                chi.clone()
            } else {
                chi.inflate(&full)?
            };
            characters.push(lifted.with_label(desc.name));
        }
    }
    Ok(FamilyReport {
        family: desc.name,
        q,
        parts,
        id: Some(desc.id),
        characters,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TableChecks {
    pub class_count: usize,
    pub character_count: usize,
    pub sum_of_squares: u128,
    pub group_order: u128,
    /// All pairwise inner products are 0 and all norms are 1.
    pub orthonormal: bool,
    pub multiplicities: BTreeMap<u64, u64>,
    pub expected_multiplicities: BTreeMap<u64, u64>,
    /// Every character matches the kernel signature of exactly one family.
    pub kernel_partition: bool,
    pub families_ok: bool,
}

impl TableChecks {
    pub fn passed(&self) -> bool {
        self.class_count == self.character_count
            && self.sum_of_squares == self.group_order
            && self.orthonormal
            && self.multiplicities == self.expected_multiplicities
            && self.kernel_partition
            && self.families_ok
    }
}

pub struct CharacterTable {
    pub q: u32,
    pub families: Vec<FamilyReport>,
    pub characters: Vec<ClassFunction>,
    pub checks: TableChecks,
}

/// Whether the characters are pairwise orthogonal with norm 1.
pub(crate) fn orthonormal(chars: &[ClassFunction]) -> bool {
    (0..chars.len()).into_par_iter().all(|i| {
        chars[i].inner_product_is(&chars[i], 1)
            && chars[i + 1..]
                .iter()
                .all(|c| chars[i].inner_product_is(c, 0))
    })
}

/// All families applicable to `q`, plus the completeness checks.
pub fn build_all(cache: &ClassCache) -> Result<CharacterTable, CharError> {
    let q = cache.group().q();
    if q > 3 && !cache.allow_large() {
        return Err(ClassError::NeedsOptIn {
            states: (q as u128).pow(NUM_ROOTS as u32),
            limit: 3u128.pow(NUM_ROOTS as u32),
        }
        .into());
    }
    let full = cache.full()?;
    let descs: Vec<FamilyDescriptor> = descriptors()
        .into_iter()
        .filter(|d| d.applies_to(q as u64))
        .collect();
    let families = descs
        .iter()
        .map(|d| build_family(d, cache))
        .collect::<Result<Vec<_>, _>>()?;
    let characters: Vec<ClassFunction> = families
        .iter()
        .flat_map(|f| f.characters.iter().cloned())
        .collect();

    let mut multiplicities = BTreeMap::new();
    let mut sum_of_squares = 0u128;
    for c in &characters {
        *multiplicities.entry(c.degree() as u64).or_insert(0) += 1;
        sum_of_squares += (c.degree() as u128).pow(2);
    }
    let kernel_partition = families.iter().zip(&descs).all(|(f, d)| {
        f.characters.iter().all(|c| {
            let k = c.kernel_roots();
            descs.iter().filter(|e| e.matches_kernel(k)).count() == 1 && d.matches_kernel(k)
        })
    });
    let checks = TableChecks {
        class_count: full.count(),
        character_count: characters.len(),
        sum_of_squares,
        group_order: full.group_order() as u128,
        orthonormal: orthonormal(&characters),
        multiplicities,
        expected_multiplicities: expected_degree_multiplicities(q as u64),
        kernel_partition,
        families_ok: families.iter().all(FamilyReport::passed),
    };
    Ok(CharacterTable {
        q,
        families,
        characters,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache(q: u32) -> ClassCache {
        ClassCache::new(UnipotentGroup::with_order(q).unwrap(), false)
    }

    fn desc(id: FamilyId) -> FamilyDescriptor {
        descriptors().into_iter().find(|d| d.id == id).unwrap()
    }

    #[test]
    fn expected_multiplicities_at_small_q() {
        assert_eq!(
            expected_degree_multiplicities(2),
            BTreeMap::from([(1, 16), (2, 28), (4, 28), (8, 23), (16, 8)])
        );
        assert_eq!(
            expected_degree_multiplicities(3),
            BTreeMap::from([(1, 81), (3, 234), (9, 162), (27, 222), (81, 54)])
        );
    }

    #[test]
    fn descriptor_counts_add_up_to_expected_multiplicities() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let mut m = BTreeMap::new();
            for d in descriptors().iter().filter(|d| d.applies_to(q)) {
                for (deg, c) in &d.expected {
                    *m.entry(deg.value(q)).or_insert(0) += c.eval(q);
                }
            }
            assert_eq!(m, expected_degree_multiplicities(q), "q={q}");
        }
    }

    #[test]
    fn family_names_parse() {
        for id in FamilyId::ALL {
            assert_eq!(FamilyId::parse(id.name()), Some(id));
        }
        assert_eq!(FamilyId::parse("f8,9"), Some(FamilyId::F89));
        assert_eq!(FamilyId::parse("lin"), Some(FamilyId::Lin));
        assert_eq!(FamilyId::parse("F13"), None);
    }

    #[test]
    fn f89_at_q2() {
        let r = build_family(&desc(FamilyId::F89), &cache(2)).unwrap();
        assert!(r.passed(), "{r:?}");
        let mut degs: Vec<i64> = r.characters.iter().map(|c| c.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![4, 4, 4, 4, 8]);
    }

    #[test]
    fn linear_family() {
        for q in [2, 3] {
            let r = build_family(&desc(FamilyId::Lin), &cache(q)).unwrap();
            assert!(r.passed());
            assert_eq!(r.characters.len(), (q as usize).pow(4));
        }
    }

    #[test]
    fn parity_is_enforced() {
        assert!(build_family(&desc(FamilyId::F8910Odd), &cache(2)).is_err());
    }

    #[test]
    fn whole_table_at_q2() {
        let t = build_all(&cache(2)).unwrap();
        for f in &t.families {
            assert!(f.passed(), "{f:?}");
        }
        assert!(t.checks.passed(), "{:?}", t.checks);
        assert_eq!(t.characters.len(), 103);
    }
}
