use alloc::vec::Vec;

use crate::partition::Partition;
use crate::relation::{Relation, TupleId};
use crate::threshold::Epsilon;

use super::{compute_lnds, sorted_class, ClassStats, Scan, ValidationOutcome};

/// Minimal-removal validation of `X: A ~ B` in `O(n log n)`.
///
/// Each class is sorted by `[A asc, B asc]`. A set of tuples is swap-free
/// exactly when its `B`-projection in that order is non-decreasing, so the
/// longest non-decreasing subsequence is the largest set that can stay and
/// its complement is a minimal removal set.
pub fn validate_aoc_optimal(r: &Relation, p: &Partition, a: usize, b: usize, eps: Epsilon) -> ValidationOutcome {
    validate_aoc_optimal_with(r, p, a, b, eps, Scan::Complete)
}

/// [`validate_aoc_optimal`] with a choice of [`Scan`].
pub fn validate_aoc_optimal_with(
    r: &Relation,
    p: &Partition,
    a: usize,
    b: usize,
    eps: Epsilon,
    scan: Scan,
) -> ValidationOutcome {
    lnds_removal(r, p, a, b, eps, scan, false)
}

/// Minimal-removal validation of `X: A ↦ B`.
///
/// Identical to [`validate_aoc_optimal`] except that ties on `A` are broken
/// by `B` descending. Two tuples with equal `A` and different `B` then form
/// a strict descent, so a non-decreasing subsequence keeps neither swaps
/// nor splits.
pub fn validate_aod_optimal(r: &Relation, p: &Partition, a: usize, b: usize, eps: Epsilon) -> ValidationOutcome {
    validate_aod_optimal_with(r, p, a, b, eps, Scan::Complete)
}

/// [`validate_aod_optimal`] with a choice of [`Scan`].
pub fn validate_aod_optimal_with(
    r: &Relation,
    p: &Partition,
    a: usize,
    b: usize,
    eps: Epsilon,
    scan: Scan,
) -> ValidationOutcome {
    lnds_removal(r, p, a, b, eps, scan, true)
}

fn lnds_removal(
    r: &Relation,
    p: &Partition,
    a: usize,
    b: usize,
    eps: Epsilon,
    scan: Scan,
    b_desc: bool,
) -> ValidationOutcome {
    let budget = eps.budget(r.row_count());
    let mut removal_set: Vec<TupleId> = Vec::new();
    let mut per_class = Vec::new();
    let mut complete = true;
    for class in p.classes().filter(|c| c.len() >= 2) {
        let rows = sorted_class(r, class, a, b, b_desc);
        let b_proj: Vec<u32> = rows.iter().map(|x| x.1).collect();
        let kept = compute_lnds(&b_proj);
        let before = removal_set.len();
        let mut k = kept.iter().peekable();
        for (i, row) in rows.iter().enumerate() {
            if k.peek() == Some(&&i) {
                k.next();
            } else {
                removal_set.push(row.2);
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
