//! Candidate validation.
//!
//! Every validator takes the relation, a partition over the candidate's
//! context, the candidate's attributes, and a threshold. Classes are
//! validated independently and their removal sets are unioned.
//!
//! | validator | dependency | removal set |
//! |---|---|---|
//! | [`validate_exact_oc`] | `X: A ~ B` | none; yes/no plus a witness swap |
//! | [`validate_aoc_iterative`] | `X: A ~ B` | greedy, may overshoot the minimum |
//! | [`validate_aoc_optimal`] | `X: A ~ B` | minimal |
//! | [`validate_aod_optimal`] | `X: A ↦ B` | minimal |
//! | [`validate_aofd`] | `X: [] ↦ A` | minimal |
//! | [`brute_force_min_removal`] | any of the above | minimal size, by search |

mod canonical;
mod exact;
mod inversions;
mod iterative;
mod lnds;
mod ofd;
mod optimal;
pub mod oracle;

use alloc::vec::Vec;

pub use canonical::canonicalize_od;
pub use exact::{validate_exact_oc, ExactCheck, SwapPair};
pub use inversions::{count_inversions, Inversions};
pub use iterative::validate_aoc_iterative;
pub use lnds::{compute_lnds, lnds_length};
pub use ofd::{validate_aofd, validate_aofd_with};
pub use optimal::{validate_aoc_optimal, validate_aoc_optimal_with, validate_aod_optimal, validate_aod_optimal_with};
pub use oracle::{brute_force_min_removal, CandidateKind};

use crate::attrs::AttrSet;
use crate::relation::{Relation, TupleId};
use crate::threshold::Factor;

/// Whether a validator may stop as soon as the threshold is exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scan {
    /// Process every class; the factor is exact even when invalid.
    #[default]
    Complete,
    /// Stop once the removal set outgrows `ε·|r|`; the factor of an invalid
    /// outcome is then only a lower bound.
    EarlyAbort,
}

/// Canonical order compatibility `X: A ~ B`.
///
/// Stored with `A` before `B` in schema order, since `A ~ B` and `B ~ A`
/// are the same dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OcCandidate {
    context: AttrSet,
    left: usize,
    right: usize,
}

impl OcCandidate {
    /// Returns `None` when `a == b` or either attribute is in the context.
    pub fn new(context: AttrSet, a: usize, b: usize) -> Option<Self> {
        if a == b || context.contains(a) || context.contains(b) {
            return None;
        }
        let (left, right) = if a < b { (a, b) } else { (b, a) };
        Some(OcCandidate { context, left, right })
    }

    /// Context `X`.
    pub fn context(&self) -> AttrSet {
        self.context
    }

    /// Earlier attribute of the pair.
    pub fn left(&self) -> usize {
        self.left
    }

    /// Later attribute of the pair.
    pub fn right(&self) -> usize {
        self.right
    }
}

/// Order functional dependency `X: [] ↦ A`: `A` is constant within each
/// class of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OfdCandidate {
    context: AttrSet,
    right: usize,
}

impl OfdCandidate {
    /// Returns `None` when `a` is in the context.
    pub fn new(context: AttrSet, a: usize) -> Option<Self> {
        (!context.contains(a)).then_some(OfdCandidate { context, right: a })
    }

    /// Context `X`.
    pub fn context(&self) -> AttrSet {
        self.context
    }

    /// Attribute required to be constant.
    pub fn right(&self) -> usize {
        self.right
    }
}

/// Canonical order dependency `X: A ↦ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OdCandidate {
    context: AttrSet,
    left: usize,
    right: usize,
}

impl OdCandidate {
    /// Returns `None` when `a == b` or either attribute is in the context.
    pub fn new(context: AttrSet, a: usize, b: usize) -> Option<Self> {
        if a == b || context.contains(a) || context.contains(b) {
            return None;
        }
        Some(OdCandidate { context, left: a, right: b })
    }

    /// Context `X`.
    pub fn context(&self) -> AttrSet {
        self.context
    }

    /// Ordering attribute `A`.
    pub fn left(&self) -> usize {
        self.left
    }

    /// Ordered attribute `B`.
    pub fn right(&self) -> usize {
        self.right
    }
}

/// Member of the canonical form of a list-based order dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalDependency {
    /// Order functional dependency.
    Ofd(OfdCandidate),
    /// Canonical order compatibility.
    Oc(OcCandidate),
}

/// Per-class accounting of a validation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassStats {
    /// Tuples in the class.
    pub size: usize,
    /// Tuples of the class in the removal set.
    pub removed: usize,
}

/// Result of validating one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationOutcome {
    /// Tuples whose removal makes the candidate hold, ascending.
    pub removal_set: Vec<TupleId>,
    /// `|r|`.
    pub row_count: usize,
    /// `|s| ≤ ε·|r|`.
    pub valid: bool,
    /// `false` when the run stopped early; `removal_set` is then partial.
    pub complete: bool,
    /// Classes processed, in partition order (singleton classes omitted).
    pub per_class: Vec<ClassStats>,
}

impl ValidationOutcome {
    /// `|s|`.
    pub fn removed(&self) -> u64 {
        self.removal_set.len() as u64
    }

    /// `e = |s| / |r|`.
    pub fn factor(&self) -> Factor {
        Factor::new(self.removed(), self.row_count as u64)
    }
}

/// Tuples of one class with their `A` and `B` ranks, sorted by `A`
/// ascending then `B` ascending (or descending when `b_desc`), then id.
pub(crate) fn sorted_class(
    r: &Relation,
    class: &[TupleId],
    a: usize,
    b: usize,
    b_desc: bool,
) -> Vec<(u32, u32, TupleId)> {
    let (ra, rb) = (r.ranks(a), r.ranks(b));
    let mut rows: Vec<(u32, u32, TupleId)> = class.iter().map(|&t| (ra[t.index()], rb[t.index()], t)).collect();
    if b_desc {
        rows.sort_unstable_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)).then(x.2.cmp(&y.2)));
    } else {
        rows.sort_unstable();
    }
    rows
}
