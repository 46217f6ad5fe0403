//! Scripted runtime and accuracy experiments over synthetic data.
//!
//! * `scal_rows`: validator time against row count on one large class.
//! * `eps_sweep`: validator time against the threshold.
//! * `overestimate`: greedy factor minus minimal factor over many random
//!   candidates.
//! * `discovery_vs_exact`: discovery time and output size at several
//!   thresholds, with and without pruning.
//!
//! Timings are taken on the calling thread, one validator call at a time.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use aod_core::discovery::OcAlgorithm;
use aod_core::validate::{validate_aoc_iterative, validate_aoc_optimal};
use aod_core::{discover, AttrSet, DiscoveryConfig, Epsilon, Factor, Partition, Relation, ValidationOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::synth::{generate, SyntheticSpec};

/// OC validator under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Minimal removal via longest non-decreasing subsequence.
    Optimal,
    /// Greedy swap removal.
    Iterative,
}

impl Algorithm {
    /// Name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Optimal => "optimal",
            Algorithm::Iterative => "iterative",
        }
    }

    /// Runs the validator.
    pub fn run(self, r: &Relation, p: &Partition, a: usize, b: usize, eps: Epsilon) -> ValidationOutcome {
        match self {
            Algorithm::Optimal => validate_aoc_optimal(r, p, a, b, eps),
            Algorithm::Iterative => validate_aoc_iterative(r, p, a, b, eps),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optimal" => Ok(Algorithm::Optimal),
            "iterative" => Ok(Algorithm::Iterative),
            _ => Err(format!("unknown algorithm `{s}` (expected optimal or iterative)")),
        }
    }
}

impl From<Algorithm> for OcAlgorithm {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Optimal => OcAlgorithm::Optimal,
            Algorithm::Iterative => OcAlgorithm::Iterative,
        }
    }
}

/// Minimum per-call time of `f` over `repeats` rounds. Fast calls are
/// batched so each round lasts at least a couple of milliseconds.
pub fn measure<T>(repeats: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let start = Instant::now();
    let mut last = f();
    let first = start.elapsed();
    let batch = (Duration::from_millis(2).as_nanos() / first.as_nanos().max(1)).clamp(1, 1000) as u32;
    let mut best = first;
    for _ in 0..repeats.saturating_sub(1).max(usize::from(batch > 1)) {
        let start = Instant::now();
        for _ in 0..batch {
            last = std::hint::black_box(f());
        }
        best = best.min(start.elapsed() / batch);
    }
    (best, last)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// One timed validator call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRow {
    /// Row count.
    pub n: usize,
    /// Validator.
    pub algorithm: Algorithm,
    /// Threshold.
    pub epsilon: Epsilon,
    /// Per-call time in milliseconds.
    pub ms: f64,
    /// Factor found; a lower bound when the validator stopped early.
    pub factor: Factor,
    /// Whether the candidate was valid.
    pub valid: bool,
}

/// Writes timing rows as CSV.
pub fn write_timings<W: Write>(rows: &[TimingRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "algorithm", "epsilon", "ms", "factor", "valid"])?;
    for t in rows {
        out.write_record([
            t.n.to_string(),
            t.algorithm.to_string(),
            t.epsilon.to_string(),
            format!("{:.4}", t.ms),
            t.factor.to_string(),
            t.valid.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Fitted time exponent per algorithm, in input order.
pub fn exponents(rows: &[TimingRow]) -> Vec<(Algorithm, f64)> {
    let mut algs: Vec<Algorithm> = Vec::new();
    for t in rows {
        if !algs.contains(&t.algorithm) {
            algs.push(t.algorithm);
        }
    }
    algs.into_iter()
        .filter_map(|a| {
            let pts: Vec<(f64, f64)> =
                rows.iter().filter(|t| t.algorithm == a).map(|t| (t.n as f64, t.ms.max(1e-6))).collect();
            (pts.len() >= 2).then(|| (a, fit_exponent(&pts)))
        })
        .collect()
}

/// Parameters shared by the timing experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingParams {
    /// Row counts.
    pub rows: Vec<usize>,
    /// Validators to time.
    pub algorithms: Vec<Algorithm>,
    /// Thresholds.
    pub epsilons: Vec<Epsilon>,
    /// Fraction of displaced `b` values; 1 reverses the column.
    pub swap_rate: f64,
    /// Generator seed.
    pub seed: u64,
    /// Timing rounds per call; the minimum is kept.
    pub repeats: usize,
}

impl Default for TimingParams {
    fn default() -> Self {
        TimingParams {
            rows: vec![1_000, 10_000, 100_000],
            algorithms: vec![Algorithm::Optimal, Algorithm::Iterative],
            epsilons: vec![Epsilon::ONE],
            swap_rate: 1.0,
            seed: 0,
            repeats: 3,
        }
    }
}

/// Times every algorithm at every row count and threshold on a single
/// class of `rows` tuples with `swap_rate` of `b` displaced.
pub fn timings(p: &TimingParams) -> Vec<TimingRow> {
    let mut out = Vec::new();
    for &n in &p.rows {
        let spec = SyntheticSpec { rows: n, swap_rate: p.swap_rate, seed: p.seed, ..Default::default() };
        let r = generate(&spec).expect("valid spec");
        let part = Partition::universe(&r);
        for &eps in &p.epsilons {
            for &alg in &p.algorithms {
                let (t, outcome) = measure(p.repeats, || alg.run(&r, &part, 0, 1, eps));
                log::info!("n={n} {alg} eps={eps}: {:.3} ms", t.as_secs_f64() * 1e3);
                out.push(TimingRow {
                    n,
                    algorithm: alg,
                    epsilon: eps,
                    ms: t.as_secs_f64() * 1e3,
                    factor: outcome.factor(),
                    valid: outcome.valid,
                });
            }
        }
    }
    out
}

/// Time against row count. Uses the first threshold of `p`.
pub fn scal_rows(p: &TimingParams) -> Vec<TimingRow> {
    timings(&TimingParams { epsilons: p.epsilons[..1].to_vec(), ..p.clone() })
}

/// Time against threshold. Uses the first row count of `p`.
pub fn eps_sweep(p: &TimingParams) -> Vec<TimingRow> {
    timings(&TimingParams { rows: p.rows[..1].to_vec(), ..p.clone() })
}

/// `max / min - 1` of the times of `alg`.
pub fn relative_spread(rows: &[TimingRow], alg: Algorithm) -> f64 {
    let ms: Vec<f64> = rows.iter().filter(|t| t.algorithm == alg).map(|t| t.ms).collect();
    let max = ms.iter().copied().fold(f64::MIN, f64::max);
    let min = ms.iter().copied().fold(f64::MAX, f64::min);
    max / min - 1.0
}

/// One candidate of the overestimation study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    /// Candidate number.
    pub candidate: usize,
    /// Row count.
    pub n: usize,
    /// Minimal factor.
    pub optimal: Factor,
    /// Greedy factor.
    pub iterative: Factor,
}

impl GapRow {
    /// Greedy factor minus minimal factor.
    pub fn gap(&self) -> f64 {
        self.iterative.to_f64() - self.optimal.to_f64()
    }
}

/// Outcome of [`overestimate`].
#[derive(Debug, Clone, PartialEq)]
pub struct OverestimateReport {
    /// Per-candidate factors.
    pub rows: Vec<GapRow>,
    /// Threshold of the fixed-threshold count.
    pub epsilon: Epsilon,
}

impl OverestimateReport {
    /// Mean of the per-candidate gaps.
    pub fn mean_gap(&self) -> f64 {
        self.rows.iter().map(GapRow::gap).sum::<f64>() / self.rows.len().max(1) as f64
    }

    /// Largest gap.
    pub fn max_gap(&self) -> f64 {
        self.rows.iter().map(GapRow::gap).fold(0.0, f64::max)
    }

    /// Smallest gap; never negative.
    pub fn min_gap(&self) -> f64 {
        self.rows.iter().map(GapRow::gap).fold(f64::INFINITY, f64::min)
    }

    /// Candidates where the greedy factor exceeds the minimal one. Each is
    /// valid at `ε` equal to its minimal factor yet rejected there by the
    /// greedy validator.
    pub fn flipped_at_boundary(&self) -> usize {
        self.rows.iter().filter(|g| g.iterative.removed > g.optimal.removed).count()
    }

    /// Candidates valid at [`Self::epsilon`] but rejected by the greedy
    /// validator.
    pub fn flipped_at_epsilon(&self) -> usize {
        self.rows.iter().filter(|g| g.optimal.within(self.epsilon) && !g.iterative.within(self.epsilon)).count()
    }

    /// Candidates valid at [`Self::epsilon`].
    pub fn valid_at_epsilon(&self) -> usize {
        self.rows.iter().filter(|g| g.optimal.within(self.epsilon)).count()
    }

    /// One-paragraph summary.
    pub fn summary(&self) -> String {
        let valid = self.valid_at_epsilon();
        format!(
            "candidates={} mean_gap={:.5} min_gap={:.5} max_gap={:.5} overestimated={} \
             flipped_at_epsilon={}/{} (epsilon={})",
            self.rows.len(),
            self.mean_gap(),
            self.min_gap(),
            self.max_gap(),
            self.flipped_at_boundary(),
            self.flipped_at_epsilon(),
            valid,
            self.epsilon,
        )
    }

    /// Writes per-candidate rows as CSV.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["candidate", "n", "optimal", "iterative", "gap"])?;
        for g in &self.rows {
            out.write_record([
                g.candidate.to_string(),
                g.n.to_string(),
                g.optimal.to_string(),
                g.iterative.to_string(),
                format!("{:.6}", g.gap()),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Compares greedy and minimal factors on `candidates` random candidates.
///
/// Candidate `i` is `{c0}: a ~ b` or `∅: a ~ b` on a relation drawn from a
/// seed derived from `seed` and `i`, with random size, swap rate, split
/// rate, distinct ratio and shuffle window. Candidates are evaluated in parallel; the
/// report does not depend on scheduling.
pub fn overestimate(candidates: usize, seed: u64, epsilon: Epsilon) -> OverestimateReport {
    let rows = (0..candidates)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64));
            let spec = SyntheticSpec {
                rows: rng.random_range(20..200),
                columns: 3,
                swap_rate: rng.random_range(0.02..0.4),
                split_rate: rng.random_range(0.0..0.3),
                distinct_ratio: rng.random_range(0.3..=1.0),
                shuffle_window: rng.random_range(0..12),
                seed: rng.random(),
            };
            let r = generate(&spec).expect("valid spec");
            let p = if rng.random_bool(0.5) { Partition::by_attribute(&r, 2) } else { Partition::universe(&r) };
            let p = p.stripped();
            GapRow {
                candidate: i,
                n: spec.rows,
                optimal: validate_aoc_optimal(&r, &p, 0, 1, Epsilon::ONE).factor(),
                iterative: validate_aoc_iterative(&r, &p, 0, 1, Epsilon::ONE).factor(),
            }
        })
        .collect();
    OverestimateReport { rows, epsilon }
}

/// One discovery run.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryRow {
    /// Threshold.
    pub epsilon: Epsilon,
    /// Whether candidates were pruned.
    pub pruning: bool,
    /// Wall-clock time in milliseconds.
    pub ms: f64,
    /// Dependencies reported.
    pub dependencies: usize,
    /// Candidates validated.
    pub validated: usize,
    /// Dependencies per lattice level, from level 1.
    pub per_level: Vec<usize>,
}

/// Discovery at each threshold, pruned and exhaustive, on a synthetic
/// relation with `columns` attributes.
pub fn discovery_vs_exact(rows: usize, columns: usize, epsilons: &[Epsilon], seed: u64) -> Vec<DiscoveryRow> {
    let spec = SyntheticSpec { rows, columns, swap_rate: 0.05, split_rate: 0.05, seed, ..Default::default() };
    let r = generate(&spec).expect("valid spec");
    let mut out = Vec::new();
    for &epsilon in epsilons {
        for pruning in [true, false] {
            let cfg = DiscoveryConfig {
                epsilon,
                pruning,
                attributes: Some(AttrSet::from_attrs(0..columns)),
                ..Default::default()
            };
            let start = Instant::now();
            let res = discover(&r, &cfg);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let mut per_level = vec![0; columns];
            for d in &res.dependencies {
                per_level[d.lattice_level - 1] += 1;
            }
            out.push(DiscoveryRow {
                epsilon,
                pruning,
                ms,
                dependencies: res.dependencies.len(),
                validated: res.validated,
                per_level,
            });
        }
    }
    out
}

/// Writes discovery rows as CSV; level counts are joined with `;`.
pub fn write_discovery<W: Write>(rows: &[DiscoveryRow], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["epsilon", "pruning", "ms", "dependencies", "validated", "per_level"])?;
    for d in rows {
        let levels: Vec<String> = d.per_level.iter().map(usize::to_string).collect();
        out.write_record([
            d.epsilon.to_string(),
            d.pruning.to_string(),
            format!("{:.3}", d.ms),
            d.dependencies.to_string(),
            d.validated.to_string(),
            levels.join(";"),
        ])?;
    }
    out.flush()?;
    Ok(())
}
