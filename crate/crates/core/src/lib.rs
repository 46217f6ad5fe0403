//! Validation and discovery of approximate order dependencies.
//!
//! The crate works over an immutable, column-oriented [`Relation`] and
//! answers two kinds of questions:
//!
//! * how many tuples must be removed before a canonical order
//!   compatibility `X: A ~ B`, an order functional dependency `X: [] -> A`,
//!   or an order dependency `X: A -> B` holds exactly ([`validate`]);
//! * which minimal dependencies hold within an error threshold across the
//!   whole attribute lattice ([`discovery`]).
//!
//! The optimal validator reduces each context class to a longest
//! non-decreasing subsequence problem and runs in `O(n log n)`. The greedy
//! swap-removal validator and an exhaustive oracle are kept alongside it
//! for comparison.
//!
//! The crate is `no_std` and only needs `alloc`. The `parallel` feature
//! validates the candidates of one lattice level on a rayon pool.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod attrs;
pub mod discovery;
pub mod error;
pub mod fixtures;
pub mod partition;
pub mod ranking;
pub mod relation;
pub mod threshold;
pub mod validate;
pub mod value;

pub use attrs::{AttrList, AttrSet};
pub use discovery::{discover, DependencyKind, DiscoveredDependency, DiscoveryConfig, DiscoveryResult};
pub use error::{ModelError, OracleError, ThresholdError};
pub use partition::Partition;
pub use ranking::{rank, RankedDependency};
pub use relation::{Attribute, Relation, RelationBuilder, TupleId};
pub use threshold::{Epsilon, Factor};
pub use validate::{CanonicalDependency, ClassStats, OcCandidate, OdCandidate, OfdCandidate, ValidationOutcome};
pub use value::{ColumnType, FiniteF64, Value};
