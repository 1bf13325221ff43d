//! Algebraic structure of the finite monoid of cellular automata over a
//! finite group G and finite alphabet A.
//!
//! The crate computes, for concrete finite groups given by Cayley tables or
//! a small spec grammar:
//!
//! - the orbit structure of the right G-action on the packed configuration
//!   space A^G ([`config`]),
//! - the subgroup conjugacy-class lattice with its partial order ([`group`]),
//! - the decomposition of the group of invertible CA into a direct product
//!   of wreath products, with exact orders ([`ica`]),
//! - the relative rank of the invertible subgroup inside the full monoid
//!   for abelian groups, the generating set realizing it, and rank bounds
//!   ([`rank`]),
//! - brute-force ground truth: full enumeration of the monoid, submonoid
//!   closures, and exhaustive relative-rank search at desk scale
//!   ([`oracle`]).
//!
//! Everything is deterministic: orbit representatives are minimal codes,
//! class representatives are minimal bitsets, and reports render
//! byte-identically across runs and thread counts.

pub mod ca;
pub mod config;
pub mod error;
pub mod group;
pub mod ica;
pub mod oracle;
pub mod rank;
pub mod report;

pub use ca::{tau_xy, swap_orbits, weight_census, KernelPartition, LocalRule, Transformation, WeightCensus};
pub use config::{Alphabet, ConfigSpace, OrbitTable, DEFAULT_SPACE_GUARD};
pub use error::{CaError, Result};
pub use group::{ConjClass, FiniteGroup, Subgroup, SubgroupLattice};
pub use ica::{ica_decomposition, orbit_centralizer, IcaDecomposition, OrbitCentralizer};
pub use oracle::{closure, enumerate_ca, enumerate_ica, exhaustive_relative_rank, MonoidSet, DEFAULT_CAP};
pub use rank::{
    alpha_one_certificates, generating_set_u, rank_upper_bounds, relative_rank,
    small_memory_closure_check, AlphaOneReport, RankReport, SmallMemoryReport,
};
pub use report::{analyze, AnalysisReport, AnalyzeOptions};
