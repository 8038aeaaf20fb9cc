//! The desk-scale sweep: every entry of the fixed instance list is analyzed
//! and every computed number compared against the classical expectation
//! table, PASS/FAIL per cell.

use holtor_core::catalog::{by_key, expected_rows, ExpectedRow};
use holtor_core::curvature::{berger_algebra, curvature_space, einstein_only};
use serde_json::{json, Value};

use crate::report::{md_inline, md_table};

fn cell(name: &str, computed: Value, expected: Value, source: &str) -> Value {
    let status = if expected.is_null() {
        "vacuous"
    } else if computed == expected {
        "pass"
    } else {
        "fail"
    };
    json!({
        "computed": computed,
        "expected": expected,
        "name": name,
        "source": source,
        "status": status,
    })
}

fn sweep_row(row: &ExpectedRow) -> Value {
    let alg = by_key(row.key).expect("sweep keys resolve");
    let ks = curvature_space(&alg);
    let berger = berger_algebra(&alg, &ks);
    let pair = einstein_only(&alg, &ks);
    let cells = vec![
        cell("space_dim", json!(alg.n()), json!(row.space_dim), "classical"),
        cell(
            "algebra_dim",
            json!(alg.dim()),
            json!(row.algebra_dim),
            "classical",
        ),
        cell(
            "curvature_dim",
            json!(ks.dim()),
            json!(row.curvature_dim.0),
            row.curvature_dim.1.as_str(),
        ),
        cell(
            "berger_dim",
            json!(berger.dim()),
            json!(row.berger_dim.0),
            row.berger_dim.1.as_str(),
        ),
        cell(
            "einstein_only",
            json!(pair.ricci_only),
            row.einstein_only.0.map_or(Value::Null, |b| json!(b)),
            row.einstein_only.1.as_str(),
        ),
    ];
    let pass = cells
        .iter()
        .all(|c| c["status"].as_str() != Some("fail"));
    json!({
        "cells": cells,
        "einstein_pair_agree": pair.ricci_only == pair.hom_only,
        "key": row.key,
        "pass": pass,
    })
}

/// Runs the sweep. The outcome is data, not an error: the exit status is 0
/// whenever every entry computes.
pub fn run_table1() -> Value {
    let rows: Vec<Value> = expected_rows().iter().map(sweep_row).collect();
    let failed: usize = rows
        .iter()
        .flat_map(|r| r["cells"].as_array().unwrap())
        .filter(|c| c["status"].as_str() == Some("fail"))
        .count();
    let total: usize = rows.iter().map(|r| r["cells"].as_array().unwrap().len()).sum();
    json!({
        "cells_failed": failed,
        "cells_total": total,
        "pass": failed == 0,
        "rows": rows,
    })
}

/// Markdown rendering: the classical table's layout (algebra | space |
/// curvature dims), one comparison column per cell family.
pub fn render_table1_md(result: &Value) -> String {
    let mut out = String::from("# holtor table1\n\n");
    let mut rows = Vec::new();
    for row in result["rows"].as_array().unwrap() {
        let key = row["key"].as_str().unwrap().to_string();
        let cells = row["cells"].as_array().unwrap();
        let find = |name: &str| {
            cells
                .iter()
                .find(|c| c["name"].as_str() == Some(name))
                .unwrap()
        };
        let show = |name: &str| {
            let c = find(name);
            format!(
                "{} ({})",
                md_inline(&c["computed"]),
                md_inline(&c["expected"])
            )
        };
        let status = if row["pass"].as_bool().unwrap() {
            "PASS"
        } else {
            "FAIL"
        };
        rows.push(vec![
            key,
            show("space_dim"),
            show("curvature_dim"),
            show("berger_dim"),
            show("einstein_only"),
            status.to_string(),
        ]);
    }
    out.push_str(&md_table(
        &[
            "algebra",
            "V (expected)",
            "dim K (expected)",
            "berger (expected)",
            "einstein (expected)",
            "status",
        ],
        &rows,
    ));
    out.push_str(&format!(
        "\n{} of {} cells failed; sweep {}.\n",
        result["cells_failed"],
        result["cells_total"],
        if result["pass"].as_bool().unwrap() {
            "PASS"
        } else {
            "FAIL"
        }
    ));
    out
}
