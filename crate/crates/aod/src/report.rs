//! Machine-readable dependency records.

use std::io::{Read, Write};

use aod_core::ranking::level_score;
use aod_core::{DependencyKind, Factor, RankedDependency, Relation};
use serde::{Deserialize, Serialize};

/// Label attached to every scored output.
pub const SCORE_MEASURE: &str = "stand-in: (1 - factor) / (1 + level)";

/// CSV header of [`OutputRecord`] tables.
pub const CSV_HEADER: [&str; 9] =
    ["kind", "context", "lhs", "rhs", "factor", "factor_decimal", "removed", "level", "score"];

/// Dependency kinds as written in output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    /// `X: A ~ B`.
    Oc,
    /// `X: [] ↦ A`.
    Ofd,
    /// `X: A ↦ B`.
    Od,
}

impl From<DependencyKind> for RecordKind {
    fn from(k: DependencyKind) -> Self {
        match k {
            DependencyKind::Aoc => RecordKind::Oc,
            DependencyKind::Aofd => RecordKind::Ofd,
        }
    }
}

/// One dependency with its factor and score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Dependency kind.
    pub kind: RecordKind,
    /// Context attribute names in schema order.
    pub context: Vec<String>,
    /// `A` of `A ~ B` or `A ↦ B`; absent for OFDs.
    pub lhs: Option<String>,
    /// `B` of `A ~ B` or `A ↦ B`, or `A` of `[] ↦ A`.
    pub rhs: String,
    /// Exact factor, `removed/rows`, unreduced.
    pub factor: String,
    /// Factor rounded to four decimals.
    pub factor_decimal: f64,
    /// Size of the removal set.
    pub removed: u64,
    /// Lattice level that generated the candidate.
    pub level: usize,
    /// Ranking score; see [`SCORE_MEASURE`].
    pub score: f64,
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

impl OutputRecord {
    /// Builds a record from attribute positions of `r`.
    pub fn new(
        r: &Relation,
        kind: RecordKind,
        context: impl IntoIterator<Item = usize>,
        lhs: Option<usize>,
        rhs: usize,
        factor: Factor,
    ) -> Self {
        let context: Vec<String> = context.into_iter().map(|a| r.name(a).to_owned()).collect();
        let level = context.len() + 1 + usize::from(lhs.is_some());
        OutputRecord {
            kind,
            lhs: lhs.map(|a| r.name(a).to_owned()),
            rhs: r.name(rhs).to_owned(),
            factor: factor.to_string(),
            factor_decimal: round4(factor.to_f64()),
            removed: factor.removed,
            level,
            score: level_score(level, factor),
            context,
        }
    }

    /// Record of a ranked discovery result.
    pub fn from_ranked(r: &Relation, d: &RankedDependency) -> Self {
        let dep = &d.dependency;
        let mut rec = OutputRecord::new(r, dep.kind.into(), dep.context.iter(), dep.left, dep.right, dep.factor);
        rec.level = dep.lattice_level;
        rec.score = d.score;
        rec
    }
}

/// Discovery output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryDocument {
    /// Threshold used, as `p/q`.
    pub epsilon: String,
    /// How `score` was computed.
    pub score_measure: String,
    /// Ranked dependencies.
    pub records: Vec<OutputRecord>,
}

/// Writes `doc` as pretty-printed JSON followed by a newline.
pub fn write_json<W: Write>(doc: &DiscoveryDocument, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, doc)?;
    writeln!(w)
}

/// Writes records as CSV with [`CSV_HEADER`]. Context names are joined
/// with `;`.
pub fn write_records_csv<W: Write>(records: &[OutputRecord], w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for rec in records {
        out.write_record([
            kind_name(rec.kind).to_owned(),
            rec.context.join(";"),
            rec.lhs.clone().unwrap_or_default(),
            rec.rhs.clone(),
            rec.factor.clone(),
            format!("{:.4}", rec.factor_decimal),
            rec.removed.to_string(),
            rec.level.to_string(),
            rec.score.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn kind_name(k: RecordKind) -> &'static str {
    match k {
        RecordKind::Oc => "oc",
        RecordKind::Ofd => "ofd",
        RecordKind::Od => "od",
    }
}

#[derive(Deserialize)]
struct CsvRow {
    kind: RecordKind,
    context: String,
    lhs: String,
    rhs: String,
    factor: String,
    factor_decimal: f64,
    removed: u64,
    level: usize,
    score: f64,
}

/// Reads records written by [`write_records_csv`].
pub fn read_records_csv<R: Read>(source: R) -> csv::Result<Vec<OutputRecord>> {
    csv::Reader::from_reader(source)
        .deserialize::<CsvRow>()
        .map(|row| {
            let row = row?;
            Ok(OutputRecord {
                kind: row.kind,
                context: if row.context.is_empty() {
                    Vec::new()
                } else {
                    row.context.split(';').map(str::to_owned).collect()
                },
                lhs: (!row.lhs.is_empty()).then_some(row.lhs),
                rhs: row.rhs,
                factor: row.factor,
                factor_decimal: row.factor_decimal,
                removed: row.removed,
                level: row.level,
                score: row.score,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use aod_core::fixtures::employee_salaries;

    #[test]
    fn record_of_experience_salary_within_position() {
        let r = employee_salaries();
        let rec = OutputRecord::new(&r, RecordKind::Oc, [0], Some(1), 2, Factor::new(1, 9));
        assert_eq!(rec.context, ["pos"]);
        assert_eq!(rec.factor, "1/9");
        assert_eq!(rec.factor_decimal, 0.1111);
        assert_eq!(rec.level, 3);
        assert!((rec.score - 0.25 * 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_factor_is_unambiguous() {
        let r = employee_salaries();
        let rec = OutputRecord::new(&r, RecordKind::Oc, [], Some(2), 5, Factor::new(4, 9));
        assert_eq!((rec.factor.as_str(), rec.factor_decimal), ("4/9", 0.4444));
    }

    #[test]
    fn csv_matches_json() {
        let r = employee_salaries();
        let recs = vec![
            OutputRecord::new(&r, RecordKind::Oc, [0, 3], Some(1), 2, Factor::new(1, 9)),
            OutputRecord::new(&r, RecordKind::Ofd, [2], None, 3, Factor::new(0, 9)),
        ];
        let mut buf = Vec::new();
        write_records_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("kind,context,lhs,rhs,factor,factor_decimal,removed,level,score\n"));
        assert!(text.contains("oc,pos;taxGrp,exp,sal,1/9,0.1111,1,4,"));
        assert_eq!(read_records_csv(text.as_bytes()).unwrap(), recs);

        let json = serde_json::to_string(&recs).unwrap();
        let back: Vec<OutputRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, recs);
    }
}
