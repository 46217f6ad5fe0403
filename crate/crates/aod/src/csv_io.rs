//! Delimited-text ingestion and serialization.
//!
//! Column types are inferred from every row: a column is integer when each
//! non-null cell parses as `i64`, decimal when each parses as a finite
//! `f64`, and text otherwise. Cells equal to the null token become
//! [`Value::Null`].

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use aod_core::{Attribute, ColumnType, ModelError, Relation, Value};

/// Reader and writer settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    /// Field separator.
    pub delimiter: u8,
    /// Cell text read as null.
    pub null_token: String,
    /// Whether the first record names the columns. Without one, columns
    /// are named `c0`, `c1`, ...
    pub has_header: bool,
    /// Rewrite `20K`, `2.5M`, `1G`, `3B` and `10%` as plain numbers before
    /// type inference.
    pub normalize_suffixes: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions { delimiter: b',', null_token: String::new(), has_header: true, normalize_suffixes: false }
    }
}

/// Ingestion failures.
#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    /// The file could not be opened or read.
    #[error("{0}")]
    Io(#[from] std::io::Error),
    /// Malformed quoting or encoding.
    #[error("{0}")]
    Csv(#[from] csv::Error),
    /// A record has the wrong number of fields.
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged {
        /// One-based line number.
        line: u64,
        /// Field count of the first record.
        expected: usize,
        /// Field count of this record.
        found: usize,
    },
    /// A numeric column holds NaN or an infinity.
    #[error("line {line}: column `{column}` holds non-finite number `{literal}`")]
    NonFinite {
        /// One-based line number.
        line: u64,
        /// Column name.
        column: String,
        /// Offending cell.
        literal: String,
    },
    /// The parsed columns do not form a valid relation.
    #[error("{0}")]
    Model(#[from] ModelError),
}

/// Reads a relation from `path`.
pub fn load_csv_path(path: &Path, opts: &CsvOptions) -> Result<Relation, CsvError> {
    load_csv(File::open(path)?, opts)
}

/// Reads a relation from delimited text.
pub fn load_csv<R: Read>(source: R, opts: &CsvOptions) -> Result<Relation, CsvError> {
    let mut reader =
        csv::ReaderBuilder::new().delimiter(opts.delimiter).has_headers(false).flexible(true).from_reader(source);

    let mut names: Option<Vec<String>> = None;
    let mut cells: Vec<Vec<Option<String>>> = Vec::new();
    let mut lines: Vec<u64> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let Some(header) = &names else {
            let first: Vec<String> = record.iter().map(str::to_owned).collect();
            if opts.has_header {
                names = Some(first);
                continue;
            }
            names = Some((0..first.len()).map(|i| format!("c{i}")).collect());
            cells = vec![Vec::new(); first.len()];
            push_row(&mut cells, &record, opts);
            lines.push(line);
            continue;
        };
        if record.len() != header.len() {
            return Err(CsvError::Ragged { line, expected: header.len(), found: record.len() });
        }
        if cells.is_empty() {
            cells = vec![Vec::new(); header.len()];
        }
        push_row(&mut cells, &record, opts);
        lines.push(line);
    }

    let names = names.unwrap_or_default();
    if cells.is_empty() {
        cells = vec![Vec::new(); names.len()];
    }
    let mut schema = Vec::with_capacity(names.len());
    let mut columns = Vec::with_capacity(names.len());
    for (name, col) in names.into_iter().zip(cells) {
        let (ty, values) = infer_column(&name, col, &lines)?;
        schema.push(Attribute { name, ty });
        columns.push(values);
    }
    Ok(Relation::from_parts(schema, columns)?)
}

fn push_row(cells: &mut [Vec<Option<String>>], record: &csv::StringRecord, opts: &CsvOptions) {
    for (col, field) in cells.iter_mut().zip(record.iter()) {
        col.push(if field == opts.null_token {
            None
        } else if opts.normalize_suffixes {
            Some(normalize_suffix(field).unwrap_or_else(|| field.to_owned()))
        } else {
            Some(field.to_owned())
        });
    }
}

fn infer_column(name: &str, col: Vec<Option<String>>, lines: &[u64]) -> Result<(ColumnType, Vec<Value>), CsvError> {
    if col.iter().flatten().all(|s| s.parse::<i64>().is_ok()) {
        let values = col.iter().map(|c| c.as_ref().map_or(Value::Null, |s| Value::Int(s.parse().unwrap())));
        return Ok((ColumnType::Integer, values.collect()));
    }
    let parsed: Option<Vec<Option<f64>>> =
        col.iter().map(|c| c.as_ref().map_or(Some(None), |s| s.parse::<f64>().ok().map(Some))).collect();
    if let Some(parsed) = parsed {
        let mut values = Vec::with_capacity(parsed.len());
        for (row, v) in parsed.into_iter().enumerate() {
            values.push(match v {
                None => Value::Null,
                Some(x) => Value::decimal(x).map_err(|_| CsvError::NonFinite {
                    line: lines[row],
                    column: name.to_owned(),
                    literal: col[row].clone().unwrap_or_default(),
                })?,
            });
        }
        return Ok((ColumnType::Decimal, values));
    }
    let values = col.into_iter().map(|c| c.map_or(Value::Null, Value::Text));
    Ok((ColumnType::Text, values.collect()))
}

/// Rewrites a magnitude-suffixed or percent literal as a plain decimal
/// string, exactly: `2.5K` becomes `2500`, `0.3K` becomes `300`, `10%`
/// becomes `10`. Returns `None` for anything else.
pub fn normalize_suffix(cell: &str) -> Option<String> {
    let (body, shift) = match cell.as_bytes().last()? {
        b'K' | b'k' => (&cell[..cell.len() - 1], 3),
        b'M' => (&cell[..cell.len() - 1], 6),
        b'G' | b'B' => (&cell[..cell.len() - 1], 9),
        b'%' => (&cell[..cell.len() - 1], 0),
        _ => return None,
    };
    let (sign, digits) = body.strip_prefix('-').map_or(("", body), |d| ("-", d));
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all: String = format!("{int}{frac}");
    let point = int.len() + shift;
    while all.len() < point {
        all.push('0');
    }
    let (whole, rest) = all.split_at(point);
    let whole = whole.trim_start_matches('0');
    let whole = if whole.is_empty() { "0" } else { whole };
    let rest = rest.trim_end_matches('0');
    Some(if rest.is_empty() { format!("{sign}{whole}") } else { format!("{sign}{whole}.{rest}") })
}

/// Writes `r` with a header row. Decimals are written so that they read
/// back as decimals (`2.0`, not `2`).
pub fn write_csv<W: Write>(r: &Relation, sink: W, opts: &CsvOptions) -> Result<(), CsvError> {
    let mut w = csv::WriterBuilder::new().delimiter(opts.delimiter).from_writer(sink);
    if opts.has_header {
        w.write_record(r.schema().iter().map(|a| a.name.as_str()))?;
    }
    let mut row = Vec::with_capacity(r.width());
    for t in r.tuple_ids() {
        row.clear();
        row.extend((0..r.width()).map(|a| match r.value(t, a) {
            Value::Null => opts.null_token.clone(),
            v => v.to_string(),
        }));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
