//! Small reference tables.

use crate::relation::Relation;

/// The nine-row employee salary table, with `K` amounts and percentages
/// written out as integers (`20K` is `20000`, `10%` is `10`).
///
/// Positions: `pos` 0, `exp` 1, `sal` 2, `taxGrp` 3, `perc` 4, `tax` 5,
/// `bonus` 6. Tuple `t_i` of the table has [`TupleId`](crate::TupleId)
/// `i - 1`.
pub fn employee_salaries() -> Relation {
    Relation::builder()
        .text_column("pos", &["sec", "sec", "dev", "sec", "dev", "dev", "dev", "dev", "dir"])
        .int_column("exp", &[1, 3, 1, 5, 3, 5, 5, -1, 8])
        .int_column("sal", &[20000, 25000, 30000, 40000, 50000, 55000, 60000, 90000, 200000])
        .text_column("taxGrp", &["A", "A", "A", "B", "B", "B", "B", "C", "C"])
        .int_column("perc", &[10, 10, 1, 30, 3, 30, 3, 8, 8])
        .int_column("tax", &[2000, 2500, 300, 12000, 1500, 16500, 1800, 7200, 16000])
        .int_column("bonus", &[1000, 1000, 3000, 2000, 4000, 4000, 4000, 7000, 10000])
        .build()
        .expect("fixture is well-formed")
}
