//! Error types.

use alloc::string::String;

use crate::value::ColumnType;

/// Errors raised while building or querying a [`Relation`](crate::Relation).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    /// Two attributes share a name.
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    /// A column has a different length than the others.
    #[error("column `{name}` has {len} rows, expected {expected}")]
    RaggedColumn {
        /// Attribute name.
        name: String,
        /// Observed length.
        len: usize,
        /// Row count of the relation.
        expected: usize,
    },
    /// A cell does not belong to its column's type.
    #[error("row {row} of column `{name}` is not of type {expected:?}")]
    TypeMismatch {
        /// Attribute name.
        name: String,
        /// Zero-based row.
        row: usize,
        /// The column's declared type.
        expected: ColumnType,
    },
    /// Values of two different types were compared.
    #[error("cannot compare a {left:?} value with a {right:?} value")]
    CrossTypeComparison {
        /// Type of the left operand.
        left: ColumnType,
        /// Type of the right operand.
        right: ColumnType,
    },
    /// An attribute name was not found in the schema.
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    /// An attribute position is outside the schema.
    #[error("attribute position {0} is outside the schema")]
    AttributeOutOfRange(usize),
    /// An attribute list repeats an attribute.
    #[error("attribute position {0} appears twice in a list")]
    RepeatedAttribute(usize),
    /// The schema has more attributes than an attribute set can hold.
    #[error("schema has {0} attributes; at most 64 are supported")]
    TooManyAttributes(usize),
    /// A decimal value is NaN or infinite.
    #[error("non-finite decimal value")]
    NonFinite,
    /// More rows than tuple identifiers can address.
    #[error("relation has {0} rows; at most u32::MAX are supported")]
    TooManyRows(usize),
}

/// Errors raised when parsing or constructing an [`Epsilon`](crate::Epsilon).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThresholdError {
    /// The threshold is below 0 or above 1.
    #[error("threshold must lie in [0, 1]")]
    OutOfRange,
    /// The text is not a decimal or `p/q` fraction.
    #[error("cannot parse `{0}` as a threshold")]
    Parse(String),
}

/// Errors raised by the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    /// The partition covers more tuples than exhaustive search allows.
    #[error("exhaustive search covers {size} tuples; the limit is {limit}")]
    TooLarge {
        /// Tuples covered by the partition's classes.
        size: usize,
        /// Maximum supported.
        limit: usize,
    },
}
