use alloc::vec::Vec;

use crate::partition::Partition;
use crate::relation::{Relation, TupleId};
use crate::threshold::Epsilon;

use super::{ClassStats, Scan, ValidationOutcome};

/// Minimal-removal validation of `X: [] ↦ A`, where `p` partitions by `X`.
///
/// Each class keeps the tuples holding its most frequent `A` value (the
/// smallest such value on ties) and removes the rest. Linear in the tuples
/// covered by `p`.
pub fn validate_aofd(r: &Relation, p: &Partition, a: usize, eps: Epsilon) -> ValidationOutcome {
    validate_aofd_with(r, p, a, eps, Scan::Complete)
}

/// [`validate_aofd`] with a choice of [`Scan`].
pub fn validate_aofd_with(r: &Relation, p: &Partition, a: usize, eps: Epsilon, scan: Scan) -> ValidationOutcome {
    let budget = eps.budget(r.row_count());
    let ranks = r.ranks(a);
    let mut counts: Vec<u32> = Vec::new();
    let mut removal_set: Vec<TupleId> = Vec::new();
    let mut per_class = Vec::new();
    let mut complete = true;
    for class in p.classes().filter(|c| c.len() >= 2) {
        if counts.is_empty() {
            counts = alloc::vec![0; r.row_count()];
        }
        let mut best = (0u32, u32::MAX);
        for t in class {
            let v = ranks[t.index()];
            counts[v as usize] += 1;
            let c = counts[v as usize];
            if c > best.0 || (c == best.0 && v < best.1) {
                best = (c, v);
            }
        }
        let before = removal_set.len();
        for t in class {
            let v = ranks[t.index()];
            counts[v as usize] = 0;
            if v != best.1 {
                removal_set.push(*t);
            }
        }
        per_class.push(ClassStats { size: class.len(), removed: removal_set.len() - before });
        if scan == Scan::EarlyAbort && removal_set.len() as u64 > budget {
            complete = false;
            break;
        }
    }
    removal_set.sort_unstable();
    let valid = removal_set.len() as u64 <= budget;
    ValidationOutcome { removal_set, row_count: r.row_count(), valid, complete, per_class }
}
