//! Equivalence classes of tuples under an attribute set.
//!
//! A [`Partition`] groups tuples that agree on every attribute of its set.
//! Classes hold ascending tuple ids and are ordered by their first member.
//! The stripped form drops singleton classes: a lone tuple can take part in
//! neither a swap nor a split, so validators only ever look at classes of
//! two or more tuples.

use alloc::vec::Vec;

use crate::attrs::AttrSet;
use crate::relation::{Relation, TupleId};

/// Equivalence classes of a relation over an attribute set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    members: Vec<TupleId>,
    // Class `i` is `members[bounds[i]..bounds[i + 1]]`.
    bounds: Vec<usize>,
    over: AttrSet,
    stripped: bool,
    row_count: usize,
}

impl Partition {
    /// Partition over the empty set: one class holding every tuple.
    pub fn universe(r: &Relation) -> Self {
        let n = r.row_count();
        let members: Vec<TupleId> = r.tuple_ids().collect();
        let bounds = if n == 0 { alloc::vec![0] } else { alloc::vec![0, n] };
        Partition { members, bounds, over: AttrSet::empty(), stripped: false, row_count: n }
    }

    /// Full partition by a single attribute.
    pub fn by_attribute(r: &Relation, attr: usize) -> Self {
        Partition::universe(r).refine(r, attr)
    }

    /// Full partition by an attribute set, built by repeated refinement.
    pub fn by_attributes(r: &Relation, attrs: AttrSet) -> Self {
        attrs.iter().fold(Partition::universe(r), |p, a| p.refine(r, a))
    }

    /// Splits every class by the values of `attr`.
    ///
    /// Each output class is a subset of exactly one input class. A stripped
    /// input gives a stripped output.
    pub fn refine(&self, r: &Relation, attr: usize) -> Partition {
        debug_assert!(!self.over.contains(attr), "refining by an attribute already in the set");
        let ranks = r.ranks(attr);
        let mut scratch: Vec<TupleId> = Vec::with_capacity(self.members.len());
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for class in self.classes() {
            let start = scratch.len();
            scratch.extend_from_slice(class);
            let sorted = &mut scratch[start..];
            sorted.sort_unstable_by_key(|t| (ranks[t.index()], *t));
            let mut i = 0;
            while i < sorted.len() {
                let key = ranks[sorted[i].index()];
                let j = i + sorted[i..].iter().take_while(|t| ranks[t.index()] == key).count();
                if !(self.stripped && j - i < 2) {
                    runs.push((start + i, start + j));
                }
                i = j;
            }
        }
        runs.sort_unstable_by_key(|&(a, _)| scratch[a]);
        let mut members = Vec::with_capacity(scratch.len());
        let mut bounds = alloc::vec![0];
        for (a, b) in runs {
            members.extend_from_slice(&scratch[a..b]);
            bounds.push(members.len());
        }
        Partition { members, bounds, over: self.over.with(attr), stripped: self.stripped, row_count: self.row_count }
    }

    /// Copy without singleton classes.
    pub fn stripped(&self) -> Partition {
        let mut members = Vec::new();
        let mut bounds = alloc::vec![0];
        for c in self.classes().filter(|c| c.len() >= 2) {
            members.extend_from_slice(c);
            bounds.push(members.len());
        }
        Partition { members, bounds, over: self.over, stripped: true, row_count: self.row_count }
    }

    /// Iterates the classes in order.
    pub fn classes(&self) -> impl ExactSizeIterator<Item = &[TupleId]> + Clone + '_ {
        self.bounds.windows(2).map(move |w| &self.members[w[0]..w[1]])
    }

    /// Number of classes held.
    pub fn class_count(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Number of equivalence classes of the full partition, counting the
    /// singletons a stripped partition omits.
    pub fn full_class_count(&self) -> usize {
        self.class_count() + (self.row_count - self.members.len())
    }

    /// Tuples covered by the held classes.
    pub fn covered(&self) -> usize {
        self.members.len()
    }

    /// The attribute set the classes agree on.
    pub fn over(&self) -> AttrSet {
        self.over
    }

    /// `true` when singleton classes are omitted.
    pub fn is_stripped(&self) -> bool {
        self.stripped
    }

    /// Cardinality of the relation the partition was built from.
    pub fn row_count(&self) -> usize {
        self.row_count
    }
}
