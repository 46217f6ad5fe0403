//! Interestingness ordering of discovered dependencies.
//!
//! The score favours small contexts and small factors:
//! `score = (1 - factor) / (1 + level)`. It is a simple stand-in for a
//! data-driven measure and is labelled as such by the CLI.

use alloc::vec::Vec;

use crate::discovery::DiscoveredDependency;
use crate::relation::Relation;
use crate::threshold::Factor;

/// A dependency paired with its score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedDependency {
    /// The dependency.
    pub dependency: DiscoveredDependency,
    /// `(1 - factor) / (1 + level)`, in `[0, 1]`.
    pub score: f64,
}

/// Score of one dependency.
pub fn score(d: &DiscoveredDependency) -> f64 {
    level_score(d.lattice_level, d.factor)
}

/// Score of a dependency generated at `level` with factor `factor`.
pub fn level_score(level: usize, factor: Factor) -> f64 {
    (1.0 - factor.to_f64()) / (1.0 + level as f64)
}

fn names<'a>(r: &'a Relation, d: &DiscoveredDependency) -> (Vec<&'a str>, Option<&'a str>, &'a str) {
    (d.context.iter().map(|a| r.name(a)).collect(), d.left.map(|a| r.name(a)), r.name(d.right))
}

/// Sorts by score descending, then level ascending, then factor ascending,
/// then attribute names.
pub fn rank(r: &Relation, deps: &[DiscoveredDependency]) -> Vec<RankedDependency> {
    let mut out: Vec<RankedDependency> =
        deps.iter().map(|&dependency| RankedDependency { dependency, score: score(&dependency) }).collect();
    out.sort_by(|x, y| {
        let (a, b) = (&x.dependency, &y.dependency);
        y.score
            .total_cmp(&x.score)
            .then(a.lattice_level.cmp(&b.lattice_level))
            .then(a.factor.cmp_value(b.factor))
            .then_with(|| names(r, a).cmp(&names(r, b)))
            .then(a.kind.cmp(&b.kind))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attrs::AttrSet;
    use crate::discovery::DependencyKind;
    use crate::fixtures::employee_salaries;

    fn oc(ctx: &[usize], a: usize, b: usize, removed: u64) -> DiscoveredDependency {
        DiscoveredDependency {
            kind: DependencyKind::Aoc,
            context: AttrSet::from_attrs(ctx.iter().copied()),
            left: Some(a),
            right: b,
            factor: Factor::new(removed, 9),
            lattice_level: ctx.len() + 2,
        }
    }

    #[test]
    fn score_of_experience_salary_within_position() {
        let d = oc(&[0], 1, 2, 1);
        assert!((score(&d) - 0.25 * 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn order_by_score_then_names() {
        let r = employee_salaries();
        let deps = [oc(&[0], 1, 2, 1), oc(&[], 2, 5, 4), oc(&[], 3, 2, 0), oc(&[], 0, 3, 0)];
        let ranked = rank(&r, &deps);
        let order: Vec<_> = ranked.iter().map(|x| (x.dependency.left, x.dependency.right)).collect();
        // Exact level-2 OCs score 1/3 and tie; "pos" sorts before "taxGrp".
        assert_eq!(order, [(Some(0), 3), (Some(3), 2), (Some(1), 2), (Some(2), 5)]);
        assert!(ranked.windows(2).all(|w| w[0].score >= w[1].score));
    }
}
