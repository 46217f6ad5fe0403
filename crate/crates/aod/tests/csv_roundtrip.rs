use aod::csv_io::{load_csv, write_csv, CsvOptions};
use aod_core::{Attribute, ColumnType, Relation, Value};
use proptest::prelude::*;

fn column() -> impl Strategy<Value = (ColumnType, Vec<Option<Value>>)> {
    let int = prop::collection::vec(prop::option::weighted(0.8, any::<i64>().prop_map(Value::Int)), 0..12)
        .prop_map(|v| (ColumnType::Integer, v));
    let dec = prop::collection::vec(
        prop::option::weighted(0.8, (-1e12f64..1e12).prop_map(|x| Value::decimal(x).unwrap())),
        0..12,
    )
    .prop_map(|v| (ColumnType::Decimal, v));
    // A leading letter keeps text from reading back as a number.
    let text =
        prop::collection::vec(prop::option::weighted(0.8, "[a-z][a-z0-9 ,\"\n;]{0,6}".prop_map(Value::Text)), 0..12)
            .prop_map(|v| (ColumnType::Text, v));
    prop_oneof![int, dec, text]
}

fn relation() -> impl Strategy<Value = Relation> {
    (1usize..5, 0usize..12).prop_flat_map(|(w, n)| (prop::collection::vec(column(), w), Just(n))).prop_map(
        |(cols, n)| {
            let schema =
                cols.iter().enumerate().map(|(i, c)| Attribute { name: format!("col {i}"), ty: c.0 }).collect();
            let columns = cols
                .into_iter()
                .map(|(_, v)| (0..n).map(|i| v.get(i).cloned().flatten().unwrap_or(Value::Null)).collect())
                .collect();
            Relation::from_parts(schema, columns).unwrap()
        },
    )
}

fn types(r: &Relation) -> Vec<ColumnType> {
    r.schema().iter().map(|a| a.ty).collect()
}

proptest! {
    #[test]
    fn write_then_load_is_identity(r in relation(), semicolon in any::<bool>()) {
        let opts = CsvOptions { delimiter: if semicolon { b';' } else { b',' }, ..Default::default() };
        let mut buf = Vec::new();
        write_csv(&r, &mut buf, &opts).unwrap();
        let back = load_csv(buf.as_slice(), &opts).unwrap();
        prop_assert_eq!(back.row_count(), r.row_count());
        for a in 0..r.width() {
            prop_assert_eq!(back.column(a), r.column(a));
            // Columns with no non-null cell read back as integer.
            if r.column(a).iter().any(|v| !v.is_null()) {
                prop_assert_eq!(types(&back)[a], types(&r)[a]);
            }
        }
        let mut again = Vec::new();
        write_csv(&back, &mut again, &opts).unwrap();
        prop_assert_eq!(load_csv(again.as_slice(), &opts).unwrap(), back);
    }
}
