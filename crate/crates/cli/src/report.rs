//! Report assembly: canonical JSON (sorted keys, exact rational strings, no
//! timestamps) and a compact Markdown rendering.

use holtor_core::exactlin::rational::Rational;
use serde_json::{json, Map, Value};

/// Identifier for the fixed convention set every report is computed under:
/// evaluation coordinates for invariant tensors, pair-major two-form indexing,
/// torsion T = −2η, squared norm = half the double-sum contraction.
pub const CONVENTIONS: &str = "eval-coords/pair-major/torsion=-2eta/norm=half-double-sum";

/// Renders a rational exactly (`p` or `p/q`, normalized).
pub fn rat(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// Renders a coordinate vector as exact strings.
pub fn rat_vec(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

/// The provenance block attached to every report.
pub fn provenance(seed: u64) -> Value {
    json!({
        "conventions": CONVENTIONS,
        "seed": format!("{seed:#x}"),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Serializes a report canonically: `serde_json`'s object maps are ordered,
/// so identical requests produce byte-identical output.
pub fn to_canonical_json(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serialization");
    text.push('\n');
    text
}

/// A `|`-separated Markdown table with a header rule.
pub fn md_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", headers.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        headers.iter().map(|_| " --- |").collect::<String>()
    ));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

/// Renders one JSON value on a single line for Markdown cells.
pub fn md_inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "—".to_string(),
        other => other.to_string(),
    }
}

/// Key/value bullet list for op results in Markdown.
pub fn md_bullets(obj: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in obj {
        out.push_str(&format!("- {k}: {}\n", md_inline(v)));
    }
    out
}
