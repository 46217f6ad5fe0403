//! Seeded synthetic relations with controlled violations.
//!
//! Columns `a` and `b` start co-sorted: `b` is the row index and `a`
//! groups consecutive rows into `distinct_ratio · rows` values. Then
//!
//! * split injection copies `a` from the previous row at
//!   `split_rate · rows` random positions, so that equal `a` values meet
//!   different `b` values;
//! * swap injection picks `swap_rate · rows` random positions and reverses
//!   the order of their `b` values. A rate of 1 reverses the whole column.
//!
//! With a positive `shuffle_window`, `b` is finally shuffled within
//! consecutive blocks of that many rows, which produces short overlapping
//! runs of disorder.
//!
//! Any further columns `c0, c1, ...` hold one dominant value on about 90%
//! of rows, so a context over them has one large class.

use aod_core::{Relation, Value};
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    /// Row count.
    pub rows: usize,
    /// Column count, at least 2.
    pub columns: usize,
    /// Fraction of rows whose `b` value is displaced.
    pub swap_rate: f64,
    /// Fraction of rows whose `a` value is copied from the previous row.
    pub split_rate: f64,
    /// Distinct `a` values as a fraction of rows.
    pub distinct_ratio: f64,
    /// Block size for local shuffling of `b`; 0 or 1 disables it.
    pub shuffle_window: usize,
    /// RNG seed.
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            rows: 1000,
            columns: 2,
            swap_rate: 0.0,
            split_rate: 0.0,
            distinct_ratio: 1.0,
            shuffle_window: 0,
            seed: 0,
        }
    }
}

/// Rejected generator parameters.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    /// A rate or ratio is outside `[0, 1]`.
    #[error("{name} must be in [0, 1], got {value}")]
    RateOutOfRange {
        /// Parameter name.
        name: &'static str,
        /// Given value.
        value: f64,
    },
    /// Fewer than two columns.
    #[error("need at least 2 columns, got {0}")]
    TooFewColumns(usize),
    /// More columns than a relation can hold.
    #[error("{0}")]
    Model(#[from] aod_core::ModelError),
}

fn count(rate: f64, n: usize) -> usize {
    ((rate * n as f64).round() as usize).min(n)
}

/// Generates the relation described by `spec`.
pub fn generate(spec: &SyntheticSpec) -> Result<Relation, SpecError> {
    for (name, value) in
        [("swap_rate", spec.swap_rate), ("split_rate", spec.split_rate), ("distinct_ratio", spec.distinct_ratio)]
    {
        if !(0.0..=1.0).contains(&value) {
            return Err(SpecError::RateOutOfRange { name, value });
        }
    }
    if spec.columns < 2 {
        return Err(SpecError::TooFewColumns(spec.columns));
    }
    let n = spec.rows;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let distinct = count(spec.distinct_ratio, n).max(1);
    let mut a: Vec<i64> = (0..n).map(|i| (i * distinct / n.max(1)) as i64).collect();
    let mut b: Vec<i64> = (0..n as i64).collect();

    if n > 1 {
        let mut at: Vec<usize> = sample(&mut rng, n - 1, count(spec.split_rate, n).min(n - 1)).into_iter().collect();
        at.sort_unstable();
        for i in at {
            a[i + 1] = a[i];
        }
    }
    let mut at: Vec<usize> = sample(&mut rng, n, count(spec.swap_rate, n)).into_iter().collect();
    at.sort_unstable();
    for k in 0..at.len() / 2 {
        b.swap(at[k], at[at.len() - 1 - k]);
    }
    if spec.shuffle_window > 1 {
        for block in b.chunks_mut(spec.shuffle_window) {
            block.shuffle(&mut rng);
        }
    }

    let mut builder = Relation::builder().int_column("a", &a).int_column("b", &b);
    for c in 0..spec.columns - 2 {
        let col: Vec<i64> = (0..n).map(|_| if rng.random_bool(0.9) { 0 } else { rng.random_range(1..8) }).collect();
        builder = builder.int_column(format!("c{c}"), &col);
    }
    Ok(builder.build()?)
}

/// Measured `(swap_rate, split_rate)` of a generated relation: the
/// fraction of rows whose `b` left its co-sorted position, and the
/// fraction of rows whose `a` equals the previous row's while `b` differs.
pub fn measured_rates(r: &Relation) -> (f64, f64) {
    let n = r.row_count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let (a, b) = (r.column(0), r.column(1));
    let displaced = b.iter().enumerate().filter(|(i, v)| **v != Value::Int(*i as i64)).count();
    let splits = (1..n).filter(|&i| a[i] == a[i - 1] && b[i] != b[i - 1]).count();
    (displaced as f64 / n as f64, splits as f64 / n as f64)
}
