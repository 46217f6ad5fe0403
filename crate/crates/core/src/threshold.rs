//! Error thresholds and approximation factors as exact rationals.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::ThresholdError;

/// Approximation threshold `ε ∈ [0, 1]`.
///
/// A removal set of size `k` over `n` tuples is within the threshold iff
/// `k ≤ ε·n`, decided with integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Ratio<u64>);

impl Epsilon {
    /// `ε = 0`: only exact dependencies.
    pub const ZERO: Epsilon = Epsilon(Ratio::new_raw(0, 1));
    /// `ε = 1`: everything is valid.
    pub const ONE: Epsilon = Epsilon(Ratio::new_raw(1, 1));

    /// `numer / denom`, which must lie in `[0, 1]`.
    pub fn new(numer: u64, denom: u64) -> Result<Self, ThresholdError> {
        if denom == 0 || numer > denom {
            return Err(ThresholdError::OutOfRange);
        }
        Ok(Epsilon(Ratio::new(numer, denom)))
    }

    /// The threshold as a reduced fraction.
    pub fn ratio(self) -> Ratio<u64> {
        self.0
    }

    /// Nearest `f64`.
    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    /// Largest removal count allowed over `rows` tuples: `⌊ε·rows⌋`.
    pub fn budget(self, rows: usize) -> u64 {
        let n = u128::from(*self.0.numer()) * rows as u128 / u128::from(*self.0.denom());
        n as u64
    }

    /// `removed ≤ ε·rows`.
    pub fn allows(self, removed: u64, rows: usize) -> bool {
        u128::from(removed) * u128::from(*self.0.denom()) <= u128::from(*self.0.numer()) * rows as u128
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Parses a plain decimal (`0.12`, `1`, `.5`) or a fraction (`4/9`).
/// Decimals are read exactly, so `0.44` is `44/100`.
impl FromStr for Epsilon {
    type Err = ThresholdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ThresholdError::Parse(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse::<u64>().map_err(|_| err())?;
            let q = q.trim().parse::<u64>().map_err(|_| err())?;
            return Epsilon::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(err());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| err())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| err())? };
        let numer = int.checked_mul(denom).and_then(|v| v.checked_add(frac)).ok_or(ThresholdError::OutOfRange)?;
        Epsilon::new(numer, denom)
    }
}

/// Approximation factor `e = |s| / |r|`, kept unreduced so that both the
/// removal count and the table size stay visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Factor {
    /// Size of the removal set.
    pub removed: u64,
    /// Number of tuples in the table.
    pub rows: u64,
}

impl Factor {
    /// `removed / rows`.
    pub fn new(removed: u64, rows: u64) -> Self {
        debug_assert!(removed <= rows);
        Factor { removed, rows }
    }

    /// Reduced fraction; zero for an empty table.
    pub fn ratio(self) -> Ratio<u64> {
        if self.rows == 0 {
            Ratio::zero()
        } else {
            Ratio::new(self.removed, self.rows)
        }
    }

    /// Nearest `f64`.
    pub fn to_f64(self) -> f64 {
        if self.rows == 0 {
            0.0
        } else {
            self.removed as f64 / self.rows as f64
        }
    }

    /// Compares the values of two factors (`3/9` equals `1/3`).
    pub fn cmp_value(self, other: Factor) -> core::cmp::Ordering {
        self.ratio().cmp(&other.ratio())
    }

    /// `e ≤ ε`.
    pub fn within(self, eps: Epsilon) -> bool {
        eps.allows(self.removed, self.rows as usize)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.removed, self.rows)
    }
}
