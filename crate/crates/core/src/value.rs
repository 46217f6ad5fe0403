//! Cell values and their total order.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use crate::error::ModelError;

/// A finite `f64`. Negative zero is folded into positive zero so that equal
/// numbers compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteF64(f64);

impl FiniteF64 {
    /// Returns `None` for NaN and infinities.
    pub fn new(v: f64) -> Option<Self> {
        if v.is_finite() {
            Some(Self(if v == 0.0 { 0.0 } else { v }))
        } else {
            None
        }
    }

    /// The wrapped number.
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for FiniteF64 {}

impl PartialOrd for FiniteF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Type of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnType {
    /// 64-bit signed integers.
    Integer,
    /// Finite 64-bit floats.
    Decimal,
    /// Unicode text, ordered by code point.
    Text,
}

/// A single cell.
///
/// Within one column every non-null value has the column's type, and the
/// order is total: null sorts before everything and equals itself, numbers
/// compare numerically, text compares by code point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// Missing value.
    Null,
    /// Integer cell.
    Int(i64),
    /// Decimal cell.
    Decimal(FiniteF64),
    /// Text cell.
    Text(String),
}

impl Value {
    /// Builds a decimal cell, rejecting NaN and infinities.
    pub fn decimal(v: f64) -> Result<Self, ModelError> {
        FiniteF64::new(v).map(Value::Decimal).ok_or(ModelError::NonFinite)
    }

    /// Builds a text cell.
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    /// The type of a non-null value.
    pub fn column_type(&self) -> Option<ColumnType> {
        match self {
            Value::Null => None,
            Value::Int(_) => Some(ColumnType::Integer),
            Value::Decimal(_) => Some(ColumnType::Decimal),
            Value::Text(_) => Some(ColumnType::Text),
        }
    }

    /// `true` for [`Value::Null`].
    pub fn is_null(&self) -> bool {
        matches!(self, Value::Null)
    }

    /// Compares two values of the same column type.
    ///
    /// Null is comparable with everything. Two non-null values of different
    /// types are an error.
    pub fn compare(&self, other: &Value) -> Result<Ordering, ModelError> {
        match (self, other) {
            (Value::Null, Value::Null) => Ok(Ordering::Equal),
            (Value::Null, _) => Ok(Ordering::Less),
            (_, Value::Null) => Ok(Ordering::Greater),
            (Value::Int(a), Value::Int(b)) => Ok(a.cmp(b)),
            (Value::Decimal(a), Value::Decimal(b)) => Ok(a.cmp(b)),
            (Value::Text(a), Value::Text(b)) => Ok(a.cmp(b)),
            (a, b) => Err(ModelError::CrossTypeComparison {
                left: a.column_type().expect("non-null"),
                right: b.column_type().expect("non-null"),
            }),
        }
    }

    fn tag(&self) -> u8 {
        match self {
            Value::Null => 0,
            Value::Int(_) => 1,
            Value::Decimal(_) => 2,
            Value::Text(_) => 3,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for sorting. Values of different non-null types never
/// meet inside one column; if they do, they are ordered by type tag.
impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.compare(other) {
            Ok(ord) => ord,
            Err(_) => {
                debug_assert!(false, "cross-type comparison");
                self.tag().cmp(&other.tag())
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Null => Ok(()),
            Value::Int(v) => write!(f, "{v}"),
            // Debug keeps a trailing `.0` so decimals re-parse as decimals.
            Value::Decimal(v) => write!(f, "{:?}", v.get()),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.into())
    }
}
