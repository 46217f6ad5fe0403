//! Exhaustive reference validation for small inputs.
//!
//! Every dependency here is violated by *pairs* of tuples of one context
//! class: swaps for order compatibilities, splits for order functional
//! dependencies, either for order dependencies. A tuple set satisfies the
//! dependency iff it contains no violating pair, so the largest set that
//! can stay is a maximum independent set of the conflict graph, found here
//! by branch and bound. Pairs are judged by comparing cells directly, with
//! no sorting and no rank encoding.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::OracleError;
use crate::partition::Partition;
use crate::relation::{Relation, TupleId};

/// Largest number of tuples the oracle accepts.
pub const ORACLE_LIMIT: usize = 20;

/// Which dependency a pair of tuples is judged against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    /// `X: A ~ B`: violated by swaps.
    Oc,
    /// `X: A ↦ B`: violated by swaps and by splits on `B` within equal `A`.
    Od,
    /// `X: [] ↦ A`: violated by splits on `A`.
    Ofd,
}

fn cmp(r: &Relation, s: TupleId, t: TupleId, attr: usize) -> Ordering {
    r.value(s, attr).compare(r.value(t, attr)).expect("one column has one type")
}

/// `true` when `s` and `t`, assumed to share a context class, violate the
/// dependency. `b` is required for [`CandidateKind::Oc`] and
/// [`CandidateKind::Od`] and ignored for [`CandidateKind::Ofd`].
pub fn conflicts(r: &Relation, s: TupleId, t: TupleId, kind: CandidateKind, a: usize, b: Option<usize>) -> bool {
    let swap = |b: usize| {
        let (oa, ob) = (cmp(r, s, t, a), cmp(r, s, t, b));
        (oa.is_lt() && ob.is_gt()) || (oa.is_gt() && ob.is_lt())
    };
    match kind {
        CandidateKind::Oc => swap(b.expect("order compatibility needs two attributes")),
        CandidateKind::Od => {
            let b = b.expect("order dependency needs two attributes");
            swap(b) || (cmp(r, s, t, a).is_eq() && cmp(r, s, t, b).is_ne())
        }
        CandidateKind::Ofd => cmp(r, s, t, a).is_ne(),
    }
}

/// Pairwise check that no class of `p` contains a violating pair.
pub fn holds_exactly(r: &Relation, p: &Partition, kind: CandidateKind, a: usize, b: Option<usize>) -> bool {
    p.classes().all(|class| {
        class.iter().enumerate().all(|(i, &s)| class[i + 1..].iter().all(|&t| !conflicts(r, s, t, kind, a, b)))
    })
}

/// Exact minimum number of tuples to remove so that the dependency holds
/// within every class of `p`. Refuses partitions covering more than
/// [`ORACLE_LIMIT`] tuples.
pub fn brute_force_min_removal(
    r: &Relation,
    p: &Partition,
    kind: CandidateKind,
    a: usize,
    b: Option<usize>,
) -> Result<u64, OracleError> {
    if p.covered() > ORACLE_LIMIT {
        return Err(OracleError::TooLarge { size: p.covered(), limit: ORACLE_LIMIT });
    }
    let tuples: Vec<(usize, TupleId)> =
        p.classes().enumerate().flat_map(|(c, class)| class.iter().map(move |&t| (c, t))).collect();
    let n = tuples.len();
    let mut adj = alloc::vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if tuples[i].0 == tuples[j].0 && conflicts(r, tuples[i].1, tuples[j].1, kind, a, b) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best = 0;
    max_independent(&adj, all, 0, &mut best);
    Ok((n as u32 - best) as u64)
}

fn max_independent(adj: &[u32], mask: u32, taken: u32, best: &mut u32) {
    if taken + mask.count_ones() <= *best {
        return;
    }
    if mask == 0 {
        *best = taken;
        return;
    }
    // Isolated vertices are always taken; otherwise branch on the vertex
    // with the most remaining neighbours.
    let mut isolated = 0u32;
    let mut pivot = None;
    let mut pivot_degree = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let d = (adj[v] & mask).count_ones();
        if d == 0 {
            isolated |= 1 << v;
        } else if d > pivot_degree {
            pivot_degree = d;
            pivot = Some(v);
        }
    }
    let taken = taken + isolated.count_ones();
    let mask = mask & !isolated;
    let Some(v) = pivot else {
        *best = (*best).max(taken);
        return;
    };
    let rest = mask & !(1 << v);
    max_independent(adj, rest & !adj[v], taken + 1, best);
    max_independent(adj, rest, taken, best);
}
