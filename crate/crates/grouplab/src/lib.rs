//! Computational finite group theory on permutation groups.
//!
//! The crate provides:
//!
//! - permutation arithmetic and stabilizer chains ([`perm`], [`bsgs`]),
//! - group constructions: cyclic, dihedral, symmetric, alternating,
//!   elementary abelian, direct/semidirect/wreath products, PSL(2,q), and a
//!   set of named fixture groups ([`construct`], [`catalog`]),
//! - subgroup machinery: cores, normalizers, normal closures, full subgroup
//!   lattices with Hasse diagrams ([`subgroup`], [`lattice`]),
//! - structural predicates: solvability, p-nilpotency, simplicity,
//!   composition factors, section freeness ([`structure`]),
//! - Sylow and Hall subgroup computation and classification ([`sylow`]),
//! - c-/nc-supplementation certificates: witness verification, exhaustive
//!   and heuristic searches, and witness transforms ([`supplement`]),
//! - a verification harness that runs structural consistency checks over a
//!   catalog of groups and emits deterministic reports ([`verify`]).
//!
//! Composition is left-to-right everywhere: `a.compose(&b)` applies `a`
//! first. Cycle notation at text boundaries is 1-based.
//!
//! Potentially expensive operations take explicit [`Bounds`]; they fail with
//! a typed error instead of running away when a cap would be exceeded.

pub mod bsgs;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod group;
pub mod lattice;
pub mod modp;
pub mod par;
pub mod perm;
pub mod structure;
pub mod subgroup;
pub mod supplement;
pub mod sylow;
pub mod verify;

pub use error::{Error, Result};
pub use group::{coset_action, quotient, Group, GroupHom, PermGroup};
pub use perm::Perm;
pub use subgroup::Subgroup;

/// Resource caps for the bounded algorithms.
///
/// `exhaustive_order_bound` gates whole-lattice enumeration, `element_cap`
/// gates element listings, `index_cap` gates coset actions, and
/// `sample_seed` drives every deterministic sampling decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub exhaustive_order_bound: u64,
    pub element_cap: u64,
    pub index_cap: u64,
    pub sample_seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            exhaustive_order_bound: 2000,
            element_cap: 100_000,
            index_cap: 100_000,
            sample_seed: 0xA4,
        }
    }
}
