//! Exact characters of U(q) and of its quotients.
//!
//! Character values lie in Z[ζ_p].  A [`ClassFunction`] stores them as integer
//! coordinates in the basis `1, ζ, ..., ζ^(p-2)` (a single integer when
//! `p = 2`), which keeps inner products and deduplication cheap; exact
//! [`CycNumber`](crate::gf::CycNumber)s are produced on request.

mod classfn;
mod explicit;
mod families;
mod induce;
mod korbit;
mod linear;
mod midafi;

use thiserror::Error;

use crate::classes::ClassError;
use crate::gf::GfError;
use crate::rootsys::RootSet;
use crate::ugroup::GroupError;

pub use classfn::ClassFunction;
pub use explicit::{extend_to_inertia, ExplicitSubgroup};
pub use families::{
    build_all, build_family, descriptors, expected_degree_multiplicities, CharacterTable,
    ClassCache, Count, Degree, FamilyDescriptor, FamilyId, FamilyReport, TableChecks,
};
pub use induce::{induce, induce_explicit, induce_full_sum, InductionPlan};
pub use korbit::{k_orbit_analysis, t_cdef, KOrbitReport, A_ROOTS};
pub use linear::LinearCharacter;
pub use midafi::{midafi, midafis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classes(#[from] ClassError),
    #[error("parameter on root {root} is not allowed: {reason}")]
    BadParameter { root: usize, reason: &'static str },
    #[error("class functions live on different groups")]
    AmbientMismatch,
    #[error("subgroup on {0:?} is not contained in the ambient group")]
    NotContained(RootSet),
    #[error("the linear character is not defined on the whole ambient group")]
    NotGlobal,
    #[error("complement coordinates do not form a transversal for {0:?}")]
    NoTransversal(RootSet),
    #[error("subgroup is not closed under multiplication")]
    NotClosed,
    #[error("character values are not multiplicative")]
    NotHomomorphism,
    #[error("linear character is not invariant under the inertia group")]
    NotInvariant,
    #[error("extension requires an inertia group of index 2, found index {0}")]
    BadIndex(u64),
    #[error("no square root of the required value exists")]
    NoSquareRoot,
    #[error("multiplicity is not an integer; the class function is not a character")]
    NotACharacter,
    #[error("{0} is required to be nonzero")]
    ZeroParameter(&'static str),
    #[error("q = {q} is outside the supported range for this operation")]
    Unsupported { q: u32 },
    #[error("family {family}: {detail}")]
    Verification { family: String, detail: String },
}
