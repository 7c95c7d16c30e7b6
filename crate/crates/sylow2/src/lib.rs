//! Exact computation engine for the structure and mod-p cohomology data of
//! Sylow p-subgroups of GL2(Z/p^n) and SL2(Z/p^n), p odd.
//!
//! The crate enumerates the groups exactly, decides structural predicates
//! with verifiable witnesses, builds subgroup lattices and fusion data, and
//! assembles the E2 page of the reduction-mod-p extension of each Sylow
//! subgroup. Everything is deterministic: identical inputs produce identical
//! reports.

pub mod arith;
pub mod cache;
pub mod cohomology;
pub mod error;
pub mod fp;
pub mod fusion;
pub mod group;
pub mod lattice;
pub mod props;
pub mod report;

pub use arith::{Ctx, Mat2, Residue};
pub use error::{Error, Result};
pub use group::{GroupKind, MatrixGroup, Subgroup};
pub use lattice::{QuotientGroup, SubgroupLattice};
