use crate::partition::Partition;
use crate::relation::{Relation, TupleId};

use super::sorted_class;

/// Two tuples of one context class with `s_A < t_A` and `t_B < s_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapPair {
    /// Tuple first in `A` order.
    pub s: TupleId,
    /// Tuple first in `B` order.
    pub t: TupleId,
}

/// Outcome of an exact order compatibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactCheck {
    /// No class contains a swap.
    pub holds: bool,
    /// A swap, when the dependency is violated.
    pub witness: Option<SwapPair>,
}

/// Checks `X: A ~ B` exactly, where `p` partitions by `X`.
///
/// Each class is sorted by `[A, B]`; the dependency holds iff every class's
/// `B`-projection is then non-decreasing. Within a class sorted that way, a
/// descent between neighbours always has strictly increasing `A`, so it is a
/// swap.
pub fn validate_exact_oc(r: &Relation, p: &Partition, a: usize, b: usize) -> ExactCheck {
    for class in p.classes().filter(|c| c.len() >= 2) {
        let rows = sorted_class(r, class, a, b, false);
        if let Some(w) = rows.windows(2).find(|w| w[0].1 > w[1].1) {
            debug_assert!(w[0].0 < w[1].0);
            return ExactCheck { holds: false, witness: Some(SwapPair { s: w[0].2, t: w[1].2 }) };
        }
    }
    ExactCheck { holds: true, witness: None }
}
