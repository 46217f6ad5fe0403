//! Level-wise discovery of minimal approximate OCs and OFDs.
//!
//! Level `ℓ` of the attribute lattice holds the attribute sets of size `ℓ`.
//! For each set `X` at that level the search tests
//!
//! * `X \ {A}: [] ↦ A` for every `A ∈ X`, and
//! * `X \ {A, B}: A ~ B` for every pair `A ≠ B` in `X`.
//!
//! A dependency is reported when its factor is within `ε` and no dependency
//! of the same kind over the same attributes is valid in a strictly smaller
//! context. With pruning on, candidates already known to be non-minimal are
//! skipped before validation:
//!
//! * **(a)** the same dependency was found valid in a strictly smaller
//!   context;
//! * **(b)** an OC attribute is exactly constant (an OFD with factor 0) in a
//!   strictly smaller context `Y`, which makes `Y: A ~ B` hold exactly;
//! * **(c)** an OFD's attribute is exactly constant in a strictly smaller
//!   context.
//!
//! Both rules only drop candidates that cannot be minimal, so pruning never
//! changes the output. With pruning off every candidate is validated and
//! the minimal ones are selected afterwards, which serves as the reference
//! for the pruned search.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::attrs::AttrSet;
use crate::partition::Partition;
use crate::relation::Relation;
use crate::threshold::{Epsilon, Factor};
use crate::validate::{
    validate_aoc_iterative, validate_aoc_optimal_with, validate_aofd_with, OcCandidate, OfdCandidate, Scan,
    ValidationOutcome,
};

/// Validator used for order compatibility candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OcAlgorithm {
    /// Longest non-decreasing subsequence; minimal removal sets.
    #[default]
    Optimal,
    /// Greedy swap removal; may overestimate factors.
    Iterative,
}

/// Parameters of a discovery run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscoveryConfig {
    /// Error threshold.
    pub epsilon: Epsilon,
    /// Largest attribute set size visited; `None` visits the whole lattice.
    pub max_level: Option<usize>,
    /// Attributes to search over; `None` uses the whole schema.
    pub attributes: Option<AttrSet>,
    /// Validator for order compatibilities.
    pub validator: OcAlgorithm,
    /// Skip candidates that cannot be minimal.
    pub pruning: bool,
}

impl Default for DiscoveryConfig {
    fn default() -> Self {
        DiscoveryConfig {
            epsilon: Epsilon::ZERO,
            max_level: None,
            attributes: None,
            validator: OcAlgorithm::Optimal,
            pruning: true,
        }
    }
}

/// Kind of a discovered dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DependencyKind {
    /// Approximate order compatibility `X: A ~ B`.
    Aoc,
    /// Approximate order functional dependency `X: [] ↦ A`.
    Aofd,
}

/// One reported dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscoveredDependency {
    /// OC or OFD.
    pub kind: DependencyKind,
    /// Context `X`.
    pub context: AttrSet,
    /// `A` of `X: A ~ B`; `None` for OFDs.
    pub left: Option<usize>,
    /// `B` of `X: A ~ B`, or `A` of `X: [] ↦ A`.
    pub right: usize,
    /// Approximation factor found by the validator.
    pub factor: Factor,
    /// Size of the attribute set that generated the candidate:
    /// `|X| + 2` for OCs, `|X| + 1` for OFDs.
    pub lattice_level: usize,
}

impl DiscoveredDependency {
    /// Size of the removal set.
    pub fn removal_count(&self) -> u64 {
        self.factor.removed
    }

    fn key(&self) -> (usize, DependencyKind, AttrSet, Option<usize>, usize) {
        (self.lattice_level, self.kind, self.context, self.left, self.right)
    }
}

/// Non-fatal conditions reported alongside the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscoveryWarning {
    /// The relation has no tuples; nothing was searched.
    EmptyRelation,
}

/// Output of [`discover`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscoveryResult {
    /// Minimal valid dependencies ordered by level, kind, context, then
    /// attributes.
    pub dependencies: Vec<DiscoveredDependency>,
    /// Set when the search could not run normally.
    pub warning: Option<DiscoveryWarning>,
    /// Candidates generated.
    pub generated: usize,
    /// Candidates validated.
    pub validated: usize,
}

/// All OC and OFD candidates generated by the attribute set `x`.
pub fn generate_candidates(x: AttrSet) -> (Vec<OcCandidate>, Vec<OfdCandidate>) {
    let attrs: Vec<usize> = x.iter().collect();
    let ofds = attrs.iter().filter_map(|&a| OfdCandidate::new(x.without(a), a)).collect();
    let mut ocs = Vec::new();
    for (i, &a) in attrs.iter().enumerate() {
        for &b in &attrs[i + 1..] {
            ocs.extend(OcCandidate::new(x.without(a).without(b), a, b));
        }
    }
    (ocs, ofds)
}

/// Valid dependencies found at earlier levels.
#[derive(Debug, Clone, Default)]
pub struct Findings {
    oc: BTreeMap<(usize, usize), Vec<AttrSet>>,
    ofd: BTreeMap<usize, Vec<AttrSet>>,
    constant: BTreeMap<usize, Vec<AttrSet>>,
}

impl Findings {
    /// Records a valid order compatibility.
    pub fn record_oc(&mut self, c: OcCandidate) {
        self.oc.entry((c.left(), c.right())).or_default().push(c.context());
    }

    /// Records a valid OFD; `exact` when its factor is zero.
    pub fn record_ofd(&mut self, c: OfdCandidate, exact: bool) {
        self.ofd.entry(c.right()).or_default().push(c.context());
        if exact {
            self.constant.entry(c.right()).or_default().push(c.context());
        }
    }

    fn below(map_entry: Option<&Vec<AttrSet>>, ctx: AttrSet) -> bool {
        map_entry.is_some_and(|cs| cs.iter().any(|c| c.is_strict_subset(ctx)))
    }

    /// Rules (a) and (b).
    pub fn prunes_oc(&self, c: &OcCandidate) -> bool {
        let ctx = c.context();
        Self::below(self.oc.get(&(c.left(), c.right())), ctx)
            || Self::below(self.constant.get(&c.left()), ctx)
            || Self::below(self.constant.get(&c.right()), ctx)
    }

    /// Rules (a) and (c).
    pub fn prunes_ofd(&self, c: &OfdCandidate) -> bool {
        Self::below(self.ofd.get(&c.right()), c.context()) || Self::below(self.constant.get(&c.right()), c.context())
    }
}

/// Drops candidates that prior findings show to be non-minimal.
pub fn prune(
    ocs: Vec<OcCandidate>,
    ofds: Vec<OfdCandidate>,
    findings: &Findings,
) -> (Vec<OcCandidate>, Vec<OfdCandidate>) {
    (
        ocs.into_iter().filter(|c| !findings.prunes_oc(c)).collect(),
        ofds.into_iter().filter(|c| !findings.prunes_ofd(c)).collect(),
    )
}

/// Attribute sets of size `k` drawn from `attrs`, in lexicographic order of
/// their positions.
fn subsets_of_size(attrs: AttrSet, k: usize) -> Vec<AttrSet> {
    let pool: Vec<usize> = attrs.iter().collect();
    let mut out = Vec::new();
    if k > pool.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + pool.len() - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Ofd(OfdCandidate),
    Oc(OcCandidate),
}

// Partitions of the two levels below the current one.
struct LevelState {
    ofd_contexts: BTreeMap<AttrSet, Partition>,
    oc_contexts: BTreeMap<AttrSet, Partition>,
}

fn run_task(r: &Relation, cfg: &DiscoveryConfig, state: &LevelState, task: Task) -> ValidationOutcome {
    match task {
        Task::Ofd(c) => {
            let p = &state.ofd_contexts[&c.context()];
            validate_aofd_with(r, p, c.right(), cfg.epsilon, Scan::EarlyAbort)
        }
        Task::Oc(c) => {
            let p = &state.oc_contexts[&c.context()];
            match cfg.validator {
                OcAlgorithm::Optimal => {
                    validate_aoc_optimal_with(r, p, c.left(), c.right(), cfg.epsilon, Scan::EarlyAbort)
                }
                OcAlgorithm::Iterative => validate_aoc_iterative(r, p, c.left(), c.right(), cfg.epsilon),
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn run_all(r: &Relation, cfg: &DiscoveryConfig, state: &LevelState, tasks: &[Task]) -> Vec<ValidationOutcome> {
    use rayon::prelude::*;
    tasks.par_iter().map(|&t| run_task(r, cfg, state, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(r: &Relation, cfg: &DiscoveryConfig, state: &LevelState, tasks: &[Task]) -> Vec<ValidationOutcome> {
    tasks.iter().map(|&t| run_task(r, cfg, state, t)).collect()
}

/// Discovers every minimal valid AOC and AOFD up to the configured level.
///
/// Output is deterministic and independent of thread scheduling.
pub fn discover(r: &Relation, cfg: &DiscoveryConfig) -> DiscoveryResult {
    if r.row_count() == 0 {
        return DiscoveryResult { warning: Some(DiscoveryWarning::EmptyRelation), ..Default::default() };
    }
    let attrs = cfg.attributes.unwrap_or_else(|| r.all_attrs());
    let top = cfg.max_level.unwrap_or(attrs.len()).min(attrs.len());

    let universe = Partition::universe(r).stripped();
    let mut state =
        LevelState { ofd_contexts: [(AttrSet::empty(), universe)].into_iter().collect(), oc_contexts: BTreeMap::new() };
    let mut findings = Findings::default();
    let mut found: Vec<DiscoveredDependency> = Vec::new();
    let mut result = DiscoveryResult::default();

    for level in 1..=top {
        let sets = subsets_of_size(attrs, level);
        let mut ocs = Vec::new();
        let mut ofds = Vec::new();
        for &x in &sets {
            let (o, f) = generate_candidates(x);
            ocs.extend(o);
            ofds.extend(f);
        }
        ofds.sort_unstable();
        ofds.dedup();
        ocs.sort_unstable();
        ocs.dedup();
        result.generated += ocs.len() + ofds.len();
        if cfg.pruning {
            (ocs, ofds) = prune(ocs, ofds, &findings);
        }
        let tasks: Vec<Task> = ofds.iter().map(|&c| Task::Ofd(c)).chain(ocs.iter().map(|&c| Task::Oc(c))).collect();
        result.validated += tasks.len();
        let outcomes = run_all(r, cfg, &state, &tasks);

        for (task, out) in tasks.iter().zip(outcomes) {
            if !out.valid {
                continue;
            }
            let factor = out.factor();
            let dep = match *task {
                Task::Ofd(c) => {
                    findings.record_ofd(c, factor.removed == 0);
                    DiscoveredDependency {
                        kind: DependencyKind::Aofd,
                        context: c.context(),
                        left: None,
                        right: c.right(),
                        factor,
                        lattice_level: level,
                    }
                }
                Task::Oc(c) => {
                    findings.record_oc(c);
                    DiscoveredDependency {
                        kind: DependencyKind::Aoc,
                        context: c.context(),
                        left: Some(c.left()),
                        right: c.right(),
                        factor,
                        lattice_level: level,
                    }
                }
            };
            found.push(dep);
        }

        if level < top {
            let mut next = BTreeMap::new();
            for &x in &sets {
                let last = x.max().expect("non-empty set");
                let parent = &state.ofd_contexts[&x.without(last)];
                next.insert(x, parent.refine(r, last));
            }
            state.oc_contexts = core::mem::replace(&mut state.ofd_contexts, next);
        }
    }

    if !cfg.pruning {
        found = keep_minimal(found);
    }
    found.sort_unstable_by_key(DiscoveredDependency::key);
    result.dependencies = found;
    result
}

fn keep_minimal(found: Vec<DiscoveredDependency>) -> Vec<DiscoveredDependency> {
    found
        .iter()
        .filter(|d| {
            !found.iter().any(|e| {
                e.kind == d.kind && e.left == d.left && e.right == d.right && e.context.is_strict_subset(d.context)
            })
        })
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::employee_salaries;
    use crate::validate::test_support::random_relation;
    use crate::validate::{validate_aoc_optimal, validate_aofd};
    use alloc::vec;
    use proptest::prelude::*;

    const POS: usize = 0;
    const EXP: usize = 1;
    const SAL: usize = 2;
    const TAX_GRP: usize = 3;
    const BONUS: usize = 6;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn candidates_of_a_pair() {
        let (ocs, ofds) = generate_candidates(AttrSet::from_attrs([POS, SAL]));
        assert_eq!(ocs, vec![OcCandidate::new(AttrSet::empty(), POS, SAL).unwrap()]);
        assert_eq!(
            ofds,
            vec![
                OfdCandidate::new(AttrSet::single(SAL), POS).unwrap(),
                OfdCandidate::new(AttrSet::single(POS), SAL).unwrap()
            ]
        );
        let (ocs, ofds) = generate_candidates(AttrSet::from_attrs([0, 1, 2]));
        assert_eq!((ocs.len(), ofds.len()), (3, 3));
    }

    #[test]
    fn subsets_enumerate_combinations() {
        let all = AttrSet::from_attrs(0..7);
        for k in 0..=7 {
            let sets = subsets_of_size(all, k);
            assert_eq!(sets.len(), binom(7, k));
            assert!(sets.iter().all(|s| s.len() == k));
        }
        assert!(subsets_of_size(AttrSet::from_attrs([1, 2]), 3).is_empty());
    }

    #[test]
    fn unpruned_candidate_count() {
        let r = employee_salaries();
        let cfg = DiscoveryConfig { epsilon: Epsilon::ONE, pruning: false, ..Default::default() };
        let res = discover(&r, &cfg);
        // Σ_X C(|X|, 2) + Σ_X |X| over all non-empty subsets of 7 attributes.
        let ocs: usize = (1..=7).map(|k| binom(7, k) * binom(k, 2)).sum();
        let ofds: usize = (1..=7).map(|k| binom(7, k) * k).sum();
        assert_eq!(ocs, 21 * 32);
        assert_eq!(res.generated, ocs + ofds);
        assert_eq!(res.validated, res.generated);
    }

    #[test]
    fn prune_rules() {
        let mut f = Findings::default();
        let empty_ocs = vec![OcCandidate::new(AttrSet::single(4), 0, 1).unwrap()];
        assert_eq!(prune(empty_ocs.clone(), vec![], &f).0, empty_ocs);
        f.record_oc(OcCandidate::new(AttrSet::empty(), 0, 1).unwrap());
        assert!(f.prunes_oc(&OcCandidate::new(AttrSet::single(2), 0, 1).unwrap()));
        assert!(!f.prunes_oc(&OcCandidate::new(AttrSet::empty(), 0, 1).unwrap()));
        assert!(!f.prunes_oc(&OcCandidate::new(AttrSet::single(2), 0, 3).unwrap()));

        f.record_ofd(OfdCandidate::new(AttrSet::from_attrs([POS, SAL]), BONUS).unwrap(), true);
        let wider = OfdCandidate::new(AttrSet::from_attrs([POS, SAL, EXP]), BONUS).unwrap();
        assert!(f.prunes_ofd(&wider));
        let oc = OcCandidate::new(AttrSet::from_attrs([POS, SAL, EXP]), BONUS, 4).unwrap();
        assert!(f.prunes_oc(&oc));
        let same_ctx = OcCandidate::new(AttrSet::from_attrs([POS, SAL]), BONUS, 4).unwrap();
        assert!(!f.prunes_oc(&same_ctx));
    }

    fn contains_oc(res: &DiscoveryResult, ctx: &[usize], a: usize, b: usize) -> Option<DiscoveredDependency> {
        let c = OcCandidate::new(AttrSet::from_attrs(ctx.iter().copied()), a, b).unwrap();
        res.dependencies.iter().copied().find(|d| {
            d.kind == DependencyKind::Aoc
                && d.context == c.context()
                && d.left == Some(c.left())
                && d.right == c.right()
        })
    }

    #[test]
    fn experience_salary_within_position() {
        let r = employee_salaries();
        let cfg = DiscoveryConfig {
            epsilon: "0.12".parse().unwrap(),
            attributes: Some(AttrSet::from_attrs([POS, EXP, SAL])),
            ..Default::default()
        };
        let res = discover(&r, &cfg);
        let d = contains_oc(&res, &[POS], EXP, SAL).expect("reported");
        assert_eq!(d.factor, Factor::new(1, 9));
        assert_eq!(d.lattice_level, 3);
    }

    #[test]
    fn co_sorted_columns() {
        let r = Relation::builder().int_column("A", &[1, 2, 3]).int_column("B", &[1, 2, 3]).build().unwrap();
        let res = discover(&r, &DiscoveryConfig::default());
        assert!(contains_oc(&res, &[], 0, 1).is_some());
    }

    #[test]
    fn salary_orders_tax_group() {
        let r = employee_salaries();
        let cfg = DiscoveryConfig { attributes: Some(AttrSet::from_attrs([SAL, TAX_GRP])), ..Default::default() };
        let res = discover(&r, &cfg);
        assert!(contains_oc(&res, &[], SAL, TAX_GRP).is_some());
        assert!(res.dependencies.iter().any(|d| d.kind == DependencyKind::Aofd
            && d.context == AttrSet::single(SAL)
            && d.right == TAX_GRP
            && d.factor.removed == 0));
    }

    #[test]
    fn empty_relation_warns() {
        let r = Relation::builder().int_column("a", &[]).build().unwrap();
        let res = discover(&r, &DiscoveryConfig::default());
        assert_eq!(res.warning, Some(DiscoveryWarning::EmptyRelation));
        assert!(res.dependencies.is_empty());
    }

    #[test]
    fn level_cap() {
        let r = employee_salaries();
        let cfg = DiscoveryConfig { epsilon: "0.2".parse().unwrap(), max_level: Some(2), ..Default::default() };
        let res = discover(&r, &cfg);
        assert!(!res.dependencies.is_empty());
        assert!(res.dependencies.iter().all(|d| d.lattice_level <= 2));
    }

    fn eps_strategy() -> impl Strategy<Value = Epsilon> {
        prop_oneof![Just(Epsilon::ZERO), Just("0.1".parse().unwrap()), Just("0.2".parse().unwrap())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pruning_preserves_output(r in random_relation(1..30, 2..6, 4), eps in eps_strategy(), iterative in any::<bool>()) {
            let validator = if iterative { OcAlgorithm::Iterative } else { OcAlgorithm::Optimal };
            let pruned = discover(&r, &DiscoveryConfig { epsilon: eps, validator, ..Default::default() });
            let full = discover(&r, &DiscoveryConfig { epsilon: eps, validator, pruning: false, ..Default::default() });
            prop_assert_eq!(&pruned.dependencies, &full.dependencies);
            prop_assert!(pruned.validated <= full.validated);
        }

        #[test]
        fn reported_factors_revalidate(r in random_relation(1..30, 2..5, 4), eps in eps_strategy()) {
            let res = discover(&r, &DiscoveryConfig { epsilon: eps, ..Default::default() });
            for d in &res.dependencies {
                prop_assert!(d.factor.within(eps));
                let p = Partition::by_attributes(&r, d.context);
                let out = match d.kind {
                    DependencyKind::Aoc => validate_aoc_optimal(&r, &p, d.left.unwrap(), d.right, eps),
                    DependencyKind::Aofd => validate_aofd(&r, &p, d.right, eps),
                };
                prop_assert_eq!(out.factor(), d.factor);
            }
            prop_assert_eq!(res, discover(&r, &DiscoveryConfig { epsilon: eps, ..Default::default() }));
        }

        #[test]
        fn level_two_grows_with_epsilon(r in random_relation(1..30, 2..5, 4)) {
            let at = |e: &str| {
                let cfg = DiscoveryConfig { epsilon: e.parse().unwrap(), max_level: Some(2), ..Default::default() };
                discover(&r, &cfg).dependencies.into_iter().filter(|d| d.lattice_level == 2)
                    .map(|d| (d.kind, d.context, d.left, d.right)).collect::<alloc::collections::BTreeSet<_>>()
            };
            let (lo, hi) = (at("0.05"), at("0.2"));
            // Level-2 OCs have an empty context and cannot be shadowed.
            prop_assert!(lo.iter().filter(|d| d.0 == DependencyKind::Aoc).all(|d| hi.contains(d)));
        }
    }
}
