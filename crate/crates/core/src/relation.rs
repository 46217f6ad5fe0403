//! Immutable column-oriented tables.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::attrs::{AttrList, AttrSet};
use crate::error::ModelError;
use crate::value::{ColumnType, Value};

/// Zero-based row index, stable for the life of a [`Relation`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct TupleId(pub u32);

impl TupleId {
    /// Row index as `usize`.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for TupleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for TupleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Schema entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    /// Unique column name.
    pub name: String,
    /// Type every non-null cell of the column has.
    pub ty: ColumnType,
}

/// A typed table. Columns are stored alongside a dense rank encoding of
/// their values, so that validators compare `u32`s instead of cells.
#[derive(Clone, PartialEq)]
pub struct Relation {
    schema: Vec<Attribute>,
    columns: Vec<Vec<Value>>,
    ranks: Vec<Vec<u32>>,
    row_count: usize,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation").field("schema", &self.schema).field("row_count", &self.row_count).finish()
    }
}

impl Relation {
    /// Starts an empty schema.
    pub fn builder() -> RelationBuilder {
        RelationBuilder::default()
    }

    /// Number of tuples `|r|`.
    pub fn row_count(&self) -> usize {
        self.row_count
    }

    /// Number of attributes.
    pub fn width(&self) -> usize {
        self.schema.len()
    }

    /// Schema in column order.
    pub fn schema(&self) -> &[Attribute] {
        &self.schema
    }

    /// Name of the attribute at `attr`.
    pub fn name(&self, attr: usize) -> &str {
        &self.schema[attr].name
    }

    /// Position of the attribute called `name`.
    pub fn position(&self, name: &str) -> Result<usize, ModelError> {
        self.schema.iter().position(|a| a.name == name).ok_or_else(|| ModelError::UnknownAttribute(name.to_string()))
    }

    /// Every position, as a set.
    pub fn all_attrs(&self) -> AttrSet {
        (0..self.width()).collect()
    }

    /// Cells of a column.
    pub fn column(&self, attr: usize) -> &[Value] {
        &self.columns[attr]
    }

    /// Dense ranks of a column: equal cells share a rank and rank order is
    /// value order.
    pub fn ranks(&self, attr: usize) -> &[u32] {
        &self.ranks[attr]
    }

    /// A single cell.
    pub fn value(&self, t: TupleId, attr: usize) -> &Value {
        &self.columns[attr][t.index()]
    }

    /// Projection `t_X` of a tuple onto a list, in list order.
    pub fn project(&self, t: TupleId, attrs: &AttrList) -> Vec<&Value> {
        attrs.as_slice().iter().map(|&a| self.value(t, a)).collect()
    }

    /// Lexicographic comparison of two tuples over an attribute list.
    /// `s ≼_X t` holds exactly when this is not [`Ordering::Greater`].
    pub fn compare_on(&self, s: TupleId, t: TupleId, attrs: &AttrList) -> Ordering {
        attrs
            .as_slice()
            .iter()
            .map(|&a| self.ranks[a][s.index()].cmp(&self.ranks[a][t.index()]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Tuple identifiers `0..row_count`.
    pub fn tuple_ids(&self) -> impl Iterator<Item = TupleId> {
        (0..self.row_count as u32).map(TupleId)
    }

    /// Copy of the relation without the given tuples. Surviving tuples are
    /// renumbered consecutively in their original order.
    pub fn without_rows(&self, removed: &[TupleId]) -> Relation {
        let mut drop = alloc::vec![false; self.row_count];
        for t in removed {
            drop[t.index()] = true;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().zip(&drop).filter(|(_, d)| !**d).map(|(v, _)| v.clone()).collect())
            .collect();
        Relation::from_parts(self.schema.clone(), columns).expect("sub-relation of a valid relation is valid")
    }

    /// Copy holding only the given attributes, in the given order.
    pub fn select_columns(&self, attrs: &AttrList) -> Relation {
        let schema = attrs.as_slice().iter().map(|&a| self.schema[a].clone()).collect();
        let columns = attrs.as_slice().iter().map(|&a| self.columns[a].clone()).collect();
        Relation::from_parts(schema, columns).expect("projection of a valid relation is valid")
    }

    /// Builds a relation from a schema and matching columns.
    pub fn from_parts(schema: Vec<Attribute>, columns: Vec<Vec<Value>>) -> Result<Self, ModelError> {
        if schema.len() > AttrSet::CAPACITY {
            return Err(ModelError::TooManyAttributes(schema.len()));
        }
        for (i, a) in schema.iter().enumerate() {
            if schema[..i].iter().any(|b| b.name == a.name) {
                return Err(ModelError::DuplicateAttribute(a.name.clone()));
            }
        }
        assert_eq!(schema.len(), columns.len(), "one column per attribute");
        let row_count = columns.first().map_or(0, Vec::len);
        if row_count > u32::MAX as usize {
            return Err(ModelError::TooManyRows(row_count));
        }
        for (a, col) in schema.iter().zip(&columns) {
            if col.len() != row_count {
                return Err(ModelError::RaggedColumn { name: a.name.clone(), len: col.len(), expected: row_count });
            }
            if let Some(row) = col.iter().position(|v| v.column_type().is_some_and(|t| t != a.ty)) {
                return Err(ModelError::TypeMismatch { name: a.name.clone(), row, expected: a.ty });
            }
        }
        let ranks = columns.iter().map(|c| dense_ranks(c)).collect();
        Ok(Relation { schema, columns, ranks, row_count })
    }
}

fn dense_ranks(col: &[Value]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..col.len() as u32).collect();
    order.sort_by(|&i, &j| col[i as usize].cmp(&col[j as usize]));
    let mut ranks = alloc::vec![0u32; col.len()];
    let mut rank = 0u32;
    for w in 0..order.len() {
        if w > 0 && col[order[w] as usize] != col[order[w - 1] as usize] {
            rank += 1;
        }
        ranks[order[w] as usize] = rank;
    }
    ranks
}

/// Column-at-a-time constructor for [`Relation`].
#[derive(Debug, Default)]
pub struct RelationBuilder {
    schema: Vec<Attribute>,
    columns: Vec<Vec<Value>>,
}

impl RelationBuilder {
    /// Appends a column.
    #[must_use]
    pub fn column(mut self, name: impl Into<String>, ty: ColumnType, values: Vec<Value>) -> Self {
        self.schema.push(Attribute { name: name.into(), ty });
        self.columns.push(values);
        self
    }

    /// Appends an integer column.
    #[must_use]
    pub fn int_column(self, name: impl Into<String>, values: &[i64]) -> Self {
        let values = values.iter().map(|&v| Value::Int(v)).collect();
        self.column(name, ColumnType::Integer, values)
    }

    /// Appends a text column.
    #[must_use]
    pub fn text_column(self, name: impl Into<String>, values: &[&str]) -> Self {
        let values = values.iter().map(|&v| Value::text(v)).collect();
        self.column(name, ColumnType::Text, values)
    }

    /// Validates and freezes the relation.
    pub fn build(self) -> Result<Relation, ModelError> {
        Relation::from_parts(self.schema, self.columns)
    }
}
