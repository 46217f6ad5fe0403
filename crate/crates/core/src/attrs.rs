//! Attribute sets and lists over schema positions.

use alloc::vec::Vec;
use core::fmt;

use crate::error::ModelError;

/// Order-free set of schema positions, stored as a bitmask.
///
/// Sets order by bitmask value, which makes `BTreeMap<AttrSet, _>` iteration
/// deterministic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AttrSet(u64);

impl AttrSet {
    /// Largest supported schema width.
    pub const CAPACITY: usize = 64;

    /// The empty set.
    pub const fn empty() -> Self {
        AttrSet(0)
    }

    /// Set holding a single position.
    pub fn single(attr: usize) -> Self {
        assert!(attr < Self::CAPACITY, "attribute position {attr} out of range");
        AttrSet(1 << attr)
    }

    /// Builds a set from positions.
    pub fn from_attrs<I: IntoIterator<Item = usize>>(attrs: I) -> Self {
        attrs.into_iter().fold(Self::empty(), |s, a| s.with(a))
    }

    /// Raw bitmask.
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Number of positions.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// `true` when no position is set.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership test.
    pub fn contains(self, attr: usize) -> bool {
        attr < Self::CAPACITY && self.0 & (1 << attr) != 0
    }

    /// Copy with `attr` added.
    #[must_use]
    pub fn with(self, attr: usize) -> Self {
        AttrSet(self.0 | Self::single(attr).0)
    }

    /// Copy with `attr` removed.
    #[must_use]
    pub fn without(self, attr: usize) -> Self {
        AttrSet(self.0 & !Self::single(attr).0)
    }

    /// Set union.
    #[must_use]
    pub fn union(self, other: AttrSet) -> Self {
        AttrSet(self.0 | other.0)
    }

    /// `self ⊆ other`.
    pub fn is_subset(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// `self ⊊ other`.
    pub fn is_strict_subset(self, other: AttrSet) -> bool {
        self != other && self.is_subset(other)
    }

    /// `true` when the sets share no position.
    pub fn is_disjoint(self, other: AttrSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest position in the set.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Positions in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let a = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(a)
            }
        })
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_attrs(iter)
    }
}

/// Ordered list of distinct schema positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AttrList(Vec<usize>);

impl AttrList {
    /// Builds a list, rejecting repeats and positions beyond the bitmask width.
    pub fn new(attrs: Vec<usize>) -> Result<Self, ModelError> {
        let mut seen = AttrSet::empty();
        for &a in &attrs {
            if a >= AttrSet::CAPACITY {
                return Err(ModelError::AttributeOutOfRange(a));
            }
            if seen.contains(a) {
                return Err(ModelError::RepeatedAttribute(a));
            }
            seen = seen.with(a);
        }
        Ok(AttrList(attrs))
    }

    /// Positions in list order.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `true` for the empty list.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The list cast to a set.
    pub fn to_set(&self) -> AttrSet {
        self.0.iter().copied().collect()
    }
}
