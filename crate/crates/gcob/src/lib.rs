//! Finite-group invariants of the two-dimensional cobordism category.
//!
//! The library builds small finite groups from a compact spec grammar,
//! enumerates genus-graded tuple monoids and their orbit counts under the
//! cobordism rewrite moves, runs complete subgroup censuses, and evaluates
//! the closed-form counterparts (divisor formulas, elementary abelian rank
//! formulas, matrix-orbit oracles) that the computed values must match.

pub mod cylinder;
pub mod error;
pub mod formulas;
pub mod group;
pub mod monoid;
pub mod spec;
pub mod subgroups;
pub mod union_find;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use monoid::{GenusPair, GenusTuple, OrbitPartition, RankReport};
pub use spec::{build_group, group_from_spec, parse_group_spec, GroupSpec};
