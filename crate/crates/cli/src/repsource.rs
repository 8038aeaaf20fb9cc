//! Resolution of representation sources: catalog keys and JSON files, plus
//! the file-backed torsion-module option.
//!
//! Representation files follow the shipped `schema/holtor-rep-1.schema.json`:
//! `{"schema": "holtor-rep/1", "name", "n", "generators", ["metric"]}` with
//! every number an exact rational string `p` or `p/q`. Torsion-module files
//! follow `schema/holtor-w-1.schema.json`: a list of vectors in the
//! evaluation coordinates of V⊗𝔤^⊥ (vector slot slow, complement coefficient
//! fast).

use std::fs;
use std::str::FromStr;

use holtor_core::catalog;
use holtor_core::exactlin::matrix::RationalMatrix;
use holtor_core::exactlin::rational::Rational;
use holtor_core::exactlin::subspace::Subspace;
use holtor_core::liealg::MetricRepresentation;
use holtor_core::torsion::TorsionModuleSpec;
use serde_json::Value;

use crate::Failure;

/// Identifier recorded in representation files.
pub const REP_SCHEMA: &str = "holtor-rep/1";
/// Identifier recorded in torsion-module files.
pub const W_SCHEMA: &str = "holtor-w/1";

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::invalid(msg)
}

/// Resolves `--rep`: a `file:` prefix loads a JSON file, anything else is a
/// catalog key.
pub fn resolve_rep(source: &str) -> Result<MetricRepresentation, Failure> {
    if let Some(path) = source.strip_prefix("file:") {
        load_rep_file(path)
    } else {
        catalog::by_key(source).map_err(|e| invalid(format!("--rep {source}: {e}")))
    }
}

fn parse_json(path: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| {
        invalid(format!(
            "{path}: JSON parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn rational_at(v: &Value, path: &str) -> Result<Rational, Failure> {
    let s = v
        .as_str()
        .ok_or_else(|| invalid(format!("{path}: expected a rational string \"p/q\"")))?;
    Rational::from_str(s).map_err(|_| invalid(format!("{path}: invalid rational {s:?}")))
}

fn rational_row(v: &Value, path: &str) -> Result<Vec<Rational>, Failure> {
    let arr = v
        .as_array()
        .ok_or_else(|| invalid(format!("{path}: expected an array of rational strings")))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| rational_at(x, &format!("{path}[{i}]")))
        .collect()
}

/// Loads and validates a representation file, reporting schema violations
/// with their JSON path.
pub fn load_rep_file(path: &str) -> Result<MetricRepresentation, Failure> {
    let root = parse_json(path)?;
    let obj = root
        .as_object()
        .ok_or_else(|| invalid(format!("{path}: top level must be an object")))?;
    match obj.get("schema").and_then(Value::as_str) {
        Some(REP_SCHEMA) => {}
        Some(other) => {
            return Err(invalid(format!(
                "{path}: schema: expected {REP_SCHEMA:?}, found {other:?}"
            )))
        }
        None => return Err(invalid(format!("{path}: schema: missing (want {REP_SCHEMA:?})"))),
    }
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid(format!("{path}: name: expected a string")))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid(format!("{path}: n: expected a positive integer")))?
        as usize;
    let gens_val = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid(format!("{path}: generators: expected an array of matrices")))?;
    if gens_val.is_empty() {
        return Err(invalid(format!("{path}: generators: must be nonempty")));
    }
    let mut mats = Vec::with_capacity(gens_val.len());
    for (g, mat_val) in gens_val.iter().enumerate() {
        let gpath = format!("{path}: generators[{g}]");
        let rows_val = mat_val
            .as_array()
            .ok_or_else(|| invalid(format!("{gpath}: expected an array of rows")))?;
        if rows_val.len() != n {
            return Err(invalid(format!(
                "{gpath}: expected {n} rows, found {}",
                rows_val.len()
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row_val) in rows_val.iter().enumerate() {
            let row = rational_row(row_val, &format!("{gpath}[{r}]"))?;
            if row.len() != n {
                return Err(invalid(format!(
                    "{gpath}[{r}]: expected {n} entries, found {}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        mats.push(RationalMatrix::from_rows(rows));
    }
    let built = match obj.get("metric") {
        None => MetricRepresentation::from_generators(name, mats),
        Some(mv) => {
            let metric = rational_row(mv, &format!("{path}: metric"))?;
            if metric.len() != n {
                return Err(invalid(format!(
                    "{path}: metric: expected {n} entries, found {}",
                    metric.len()
                )));
            }
            MetricRepresentation::from_generators_with_metric(name, mats, metric)
        }
    };
    built.map_err(|e| invalid(format!("{path}: {e}")))
}

/// Resolves `--w-mode`: `full`, `invariant`, or `file:PATH`.
pub fn resolve_w_mode(mode: &str, alg: &MetricRepresentation) -> Result<TorsionModuleSpec, Failure> {
    match mode {
        "full" => Ok(TorsionModuleSpec::Full),
        "invariant" => Ok(TorsionModuleSpec::Invariant),
        other => {
            let path = other.strip_prefix("file:").ok_or_else(|| {
                invalid(format!(
                    "--w-mode {other}: expected full, invariant, or file:PATH"
                ))
            })?;
            let root = parse_json(path)?;
            let obj = root
                .as_object()
                .ok_or_else(|| invalid(format!("{path}: top level must be an object")))?;
            match obj.get("schema").and_then(Value::as_str) {
                Some(W_SCHEMA) => {}
                _ => {
                    return Err(invalid(format!(
                        "{path}: schema: expected {W_SCHEMA:?}"
                    )))
                }
            }
            let vec_val = obj
                .get("vectors")
                .and_then(Value::as_array)
                .ok_or_else(|| invalid(format!("{path}: vectors: expected an array")))?;
            let ambient = alg.n() * alg.orthocomplement_in_so().dim();
            let mut vectors = Vec::with_capacity(vec_val.len());
            for (i, v) in vec_val.iter().enumerate() {
                let row = rational_row(v, &format!("{path}: vectors[{i}]"))?;
                if row.len() != ambient {
                    return Err(invalid(format!(
                        "{path}: vectors[{i}]: expected length {ambient}, found {}",
                        row.len()
                    )));
                }
                vectors.push(row);
            }
            Ok(TorsionModuleSpec::Explicit(Subspace::from_spanning(
                vectors, ambient,
            )))
        }
    }
}

/// Parses `--eta invariant[:index]` into a basis index.
pub fn parse_eta(eta: &str) -> Result<usize, Failure> {
    match eta {
        "invariant" => Ok(0),
        other => other
            .strip_prefix("invariant:")
            .and_then(|i| i.parse::<usize>().ok())
            .ok_or_else(|| {
                invalid(format!(
                    "--eta {other}: expected invariant or invariant:INDEX"
                ))
            }),
    }
}

/// Parses an exact rational CLI argument.
pub fn parse_rational(flag: &str, value: &str) -> Result<Rational, Failure> {
    Rational::from_str(value).map_err(|_| invalid(format!("{flag} {value}: invalid rational")))
}
