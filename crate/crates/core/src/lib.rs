//! Construction, exhaustive verification and upper-bound evaluation for general covering
//! designs.
//!
//! A `t-(v,k,m,λ)` general cover is a multiset of `k`-subsets of a `v`-set such that every
//! `m`-subset meets at least `λ` blocks in at least `t` points. Covering designs (`m = t`),
//! Turán systems (`k = t`) and lotto designs (`λ = 1`) are special cases.
//!
//! - [`model`]: designs, specs, partitions and set algebra.
//! - [`verify`]: certificate-producing exhaustive checks.
//! - [`ingredients`]: Steiner systems, factorizations, resolvable coverings, greedy covers.
//! - [`constructions`]: point splicing, trapping-triples, trapping-quadruples, four-part.
//! - [`bounds`]: exact integer evaluation of the upper-bound formulas.
//! - [`catalog`]: design files and the local catalog of best-known covers.

pub mod block;
pub mod bounds;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod ingredients;
pub mod model;
pub mod subsets;
pub mod verify;

pub use block::{Block, MAX_POINTS};
pub use error::{Error, Result};
pub use model::{
    complement_design, make_design, multiset_union, product_blocks, profile_of,
    quasi_equal_partition, BlockFamily, CoverSpec, Design, PartitionSpec, ResolvedClasses,
    SubsetProfile,
};
pub use verify::{
    verify_general_cover, verify_general_cover_with, verify_resolution, verify_t_design, verify_two_partition,
    SpliceVariant, Verdict, VerifyOptions,
};
pub use bounds::{evaluate_bound, BoundFormula, FormulaId};
pub use catalog::{Catalog, DesignFile};
pub use constructions::{Construction, ConstructionId, ProvenanceRecord};
