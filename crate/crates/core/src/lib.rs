//! Conjugacy classes and irreducible characters of the Sylow p-subgroup U(q)
//! of the Chevalley group D4(q).
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: finite fields, the additive character φ and exact values in Q(ζ_p);
//! * [`rootsys`]: the twelve positive roots, commutator relations, hooks;
//! * [`ugroup`]: normal forms and multiplication by collection;
//! * [`classes`]: conjugacy classes by orbit enumeration;
//! * [`chars`]: class functions, induction, midafis and the character families;
//! * [`verify`]: the end-to-end consistency checks driven by the `d4u` binary.

pub mod chars;
pub mod classes;
pub mod cli;
pub mod gf;
pub mod rootsys;
pub mod ugroup;
pub mod verify;
