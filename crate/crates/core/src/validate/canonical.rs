use alloc::collections::BTreeSet;

use crate::attrs::{AttrList, AttrSet};

use super::{CanonicalDependency, OcCandidate, OfdCandidate};

/// Rewrites the list-based order dependency `X ↦ Y` as an equivalent set of
/// canonical dependencies.
///
/// * `X: [] ↦ A` for every `A` in `Y` (the functional part);
/// * `{X_1..X_{i-1}} ∪ {Y_1..Y_{j-1}}: X_i ~ Y_j` for every pair of
///   positions `i`, `j` (the order-compatibility part).
///
/// Members that hold in every table are dropped: an OFD whose attribute is
/// in its context, and an OC pairing an attribute with itself or with an
/// attribute of its own context.
pub fn canonicalize_od(lhs: &AttrList, rhs: &AttrList) -> BTreeSet<CanonicalDependency> {
    let mut out = BTreeSet::new();
    let x_set = lhs.to_set();
    for &a in rhs.as_slice() {
        if let Some(ofd) = OfdCandidate::new(x_set, a) {
            out.insert(CanonicalDependency::Ofd(ofd));
        }
    }
    let mut x_prefix = AttrSet::empty();
    for &xi in lhs.as_slice() {
        let mut y_prefix = AttrSet::empty();
        for &yj in rhs.as_slice() {
            if let Some(oc) = OcCandidate::new(x_prefix.union(y_prefix), xi, yj) {
                out.insert(CanonicalDependency::Oc(oc));
            }
            y_prefix = y_prefix.with(yj);
        }
        x_prefix = x_prefix.with(xi);
    }
    out
}
