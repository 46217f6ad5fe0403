use alloc::vec::Vec;

use crate::partition::Partition;
use crate::relation::{Relation, TupleId};
use crate::threshold::Epsilon;

use super::{count_inversions, sorted_class, ClassStats, ValidationOutcome};

/// Greedy swap-removal validation of `X: A ~ B`.
///
/// Within each class sorted by `[A, B]`, swap counts start as inversion
/// counts of the `B`-projection. The tuple with the most swaps is removed
/// and the counts of its swap partners are decremented, until no swaps
/// remain. Among tuples tied for the most swaps, the one earliest in
/// `[A, B]` order goes first.
///
/// The run aborts with an invalid, incomplete outcome as soon as more than
/// `ε·|r|` tuples have been removed. Each removal costs `O(m)`, so a class
/// of `m` tuples costs `O(m log m + εnm)`.
///
/// The removal set is not guaranteed to be minimal.
pub fn validate_aoc_iterative(r: &Relation, p: &Partition, a: usize, b: usize, eps: Epsilon) -> ValidationOutcome {
    let budget = eps.budget(r.row_count());
    let mut removal_set: Vec<TupleId> = Vec::new();
    let mut per_class = Vec::new();
    for class in p.classes().filter(|c| c.len() >= 2) {
        let rows = sorted_class(r, class, a, b, false);
        let b_proj: Vec<u32> = rows.iter().map(|x| x.1).collect();
        let mut swaps = count_inversions(&b_proj).per_index;
        let mut alive = alloc::vec![true; rows.len()];
        let mut removed_here = 0;
        while let Some(victim) = most_swapped(&swaps, &alive) {
            alive[victim] = false;
            let (va, vb, vt) = rows[victim];
            for (j, &(sa, sb, _)) in rows.iter().enumerate() {
                if alive[j] && ((sa < va && sb > vb) || (sa > va && sb < vb)) {
                    swaps[j] -= 1;
                }
            }
            removal_set.push(vt);
            removed_here += 1;
            if removal_set.len() as u64 > budget {
                per_class.push(ClassStats { size: class.len(), removed: removed_here });
                removal_set.sort_unstable();
                return ValidationOutcome {
                    removal_set,
                    row_count: r.row_count(),
                    valid: false,
                    complete: false,
                    per_class,
                };
            }
        }
        per_class.push(ClassStats { size: class.len(), removed: removed_here });
    }
    removal_set.sort_unstable();
    ValidationOutcome { removal_set, row_count: r.row_count(), valid: true, complete: true, per_class }
}

// Earliest alive position with the largest positive swap count.
fn most_swapped(swaps: &[u64], alive: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, u64)> = None;
    for (i, (&s, &live)) in swaps.iter().zip(alive).enumerate() {
        if live && s > 0 && best.is_none_or(|(_, bs)| s > bs) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}
