//! Command-line front end: resolves catalog keys or JSON representation
//! files, runs the selected analyses, and emits canonical reports.
//!
//! Exit codes: 0 for a clean run, 2 for validation problems (arguments,
//! files, schema, preconditions), 3 when an analysis reports an undecided or
//! unsolvable outcome (the report is still emitted). The sampling seed comes
//! from `HOLTOR_SEED` (decimal or `0x`-hex, default `0x5EED`) and is recorded
//! in every report's provenance block.

pub mod args;
pub mod ops;
pub mod report;
pub mod repsource;
pub mod sweep;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{AnalyzeArgs, Cli, Command, Format, InfmodelArgs, OpName, Table1Args};
use ops::RequestCtx;
use report::{md_bullets, provenance, to_canonical_json};

/// Default sampling seed, overridden by `HOLTOR_SEED`.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// How a request failed, carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// 2 for validation problems, 3 for reported analysis outcomes.
    pub exit: i32,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            message: message.into(),
        }
    }

    pub fn outcome(message: impl Into<String>) -> Self {
        Failure {
            exit: 3,
            message: message.into(),
        }
    }
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var("HOLTOR_SEED") {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(text) => {
            let t = text.trim();
            let parsed = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                u64::from_str_radix(hex, 16)
            } else {
                t.parse::<u64>()
            };
            parsed.map_err(|_| Failure::invalid(format!("HOLTOR_SEED {text:?}: expected a decimal or 0x-hex integer")))
        }
    }
}

/// Entry point used by the `holtor` binary.
pub fn run() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let code = match seed_from_env() {
        Err(f) => {
            eprintln!("holtor: {}", f.message);
            f.exit
        }
        Ok(seed) => match cli.command {
            Command::Analyze(a) => run_analyze(&a, seed),
            Command::Table1(t) => run_table1(&t, seed),
            Command::Infmodel(m) => run_infmodel(&m, seed),
        },
    };
    std::process::exit(code);
}

fn rep_block(alg: &holtor_core::liealg::MetricRepresentation) -> Value {
    json!({
        "algebra_dim": alg.dim(),
        "metric": report::rat_vec(alg.metric()),
        "name": alg.name(),
        "space_dim": alg.n(),
    })
}

fn emit(format: Format, payload: &Value, md: impl FnOnce(&Value) -> String) {
    match format {
        Format::Json => print!("{}", to_canonical_json(payload)),
        Format::Md => print!("{}", md(payload)),
    }
}

/// Renders an analyze/infmodel report as Markdown sections.
fn render_results_md(payload: &Value) -> String {
    let mut out = String::new();
    if let Some(rep) = payload.get("rep") {
        out.push_str(&format!(
            "# holtor — {} (V = R^{}, dim g = {})\n\n",
            rep["name"].as_str().unwrap_or("?"),
            rep["space_dim"],
            rep["algebra_dim"]
        ));
    }
    if let Some(results) = payload.get("results").and_then(Value::as_object) {
        for (op, body) in results {
            out.push_str(&format!("## {op}\n\n"));
            match body.as_object() {
                Some(obj) => out.push_str(&md_bullets(obj)),
                None => out.push_str(&format!("{body}\n")),
            }
            out.push('\n');
        }
    }
    out
}

fn run_analyze(a: &AnalyzeArgs, seed: u64) -> i32 {
    let alg = match repsource::resolve_rep(&a.rep) {
        Ok(alg) => alg,
        Err(f) => {
            eprintln!("holtor: {}", f.message);
            return f.exit;
        }
    };
    let mut ops: Vec<OpName> = a.ops.clone();
    ops.sort();
    ops.dedup();
    let ctx = RequestCtx::new(&alg, seed, a.emit_bases, &a.w_mode);
    let mut results = Map::new();
    let mut exit = 0;
    for op in ops {
        let fragment = match ops::execute(op, &ctx, &a.model) {
            Ok(v) => v,
            Err(f) => {
                exit = exit.max(f.exit);
                json!({"error": {"exit": f.exit, "message": f.message}})
            }
        };
        results.insert(op.as_str().to_string(), fragment);
    }
    let payload = json!({
        "provenance": provenance(seed),
        "rep": rep_block(&alg),
        "request": {
            "command": "analyze",
            "emit_bases": a.emit_bases,
            "ops": a.ops.iter().map(|o| o.as_str()).collect::<Vec<_>>(),
            "rep": a.rep,
            "w_mode": a.w_mode,
        },
        "results": Value::Object(results),
    });
    emit(a.format, &payload, render_results_md);
    exit
}

fn run_table1(t: &Table1Args, seed: u64) -> i32 {
    let sweep_result = sweep::run_table1();
    let payload = json!({
        "provenance": provenance(seed),
        "request": {"command": "table1"},
        "results": {"table1": sweep_result},
    });
    emit(t.format, &payload, |p| {
        sweep::render_table1_md(&p["results"]["table1"])
    });
    0
}

fn run_infmodel(m: &InfmodelArgs, seed: u64) -> i32 {
    let alg = match repsource::resolve_rep(&m.rep) {
        Ok(alg) => alg,
        Err(f) => {
            eprintln!("holtor: {}", f.message);
            return f.exit;
        }
    };
    let (fragment, exit) = match ops::run_model(&alg, &m.model, m.emit_bases) {
        Ok(v) => (v, 0),
        Err(f) => (
            json!({"error": {"exit": f.exit, "message": f.message}}),
            f.exit,
        ),
    };
    let payload = json!({
        "provenance": provenance(seed),
        "rep": rep_block(&alg),
        "request": {
            "command": "infmodel",
            "emit_bases": m.emit_bases,
            "eta": m.model.eta,
            "kappa": m.model.kappa,
            "lambda": m.model.lambda,
            "rep": m.rep,
            "solve": m.model.solve,
        },
        "results": {"infmodel": fragment},
    });
    emit(m.format, &payload, render_results_md);
    exit
}
