//! Execution of the `analyze` operations and the model builder shared with
//! the `infmodel` subcommand.

use std::cell::OnceCell;

use holtor_core::curvature::{
    berger_algebra, berger_decomposition, curvature_space, einstein_only, holonomy_classify,
    is_ideal, CurvatureError, CurvatureSpace,
};
use holtor_core::exactlin::rational::Rational;
use holtor_core::infmodel::{
    ansatz_model, build_bracket, effectiveness_check, family_defect, invariant_three_forms,
    jacobi_defect, model_einstein, solve_family, symmetric_signature, FamilySolutions, ModelError,
};
use holtor_core::liealg::MetricRepresentation;
use holtor_core::torsion::{
    classify_invariant_torsion, einstein_conditions, parallel_criterion, torsion_spaces,
    TorsionError,
};
use serde_json::{json, Value};

use crate::args::{ModelArgs, OpName};
use crate::report::{rat, rat_vec};
use crate::repsource::{parse_eta, parse_rational, resolve_w_mode};
use crate::Failure;

/// Per-request context: the resolved representation plus lazily shared
/// intermediate results.
pub struct RequestCtx<'a> {
    pub alg: &'a MetricRepresentation,
    pub seed: u64,
    pub emit_bases: bool,
    pub w_mode: &'a str,
    ks: OnceCell<CurvatureSpace>,
}

impl<'a> RequestCtx<'a> {
    pub fn new(alg: &'a MetricRepresentation, seed: u64, emit_bases: bool, w_mode: &'a str) -> Self {
        RequestCtx {
            alg,
            seed,
            emit_bases,
            w_mode,
            ks: OnceCell::new(),
        }
    }

    pub fn curvature(&self) -> &CurvatureSpace {
        self.ks.get_or_init(|| curvature_space(self.alg))
    }
}

fn basis_value(basis: &[Vec<Rational>]) -> Value {
    Value::Array(basis.iter().map(|v| rat_vec(v)).collect())
}

fn torsion_failure(e: TorsionError) -> Failure {
    match e {
        TorsionError::LemmaViolation => Failure::outcome(format!("{e}")),
        _ => Failure::invalid(format!("{e}")),
    }
}

fn model_failure(e: ModelError) -> Failure {
    match e {
        ModelError::NoSolution | ModelError::Underdetermined | ModelError::AnsatzOutsideAlgebra => {
            Failure::outcome(format!("{e}"))
        }
        _ => Failure::invalid(format!("{e}")),
    }
}

/// Runs one operation, producing its report fragment.
pub fn execute(op: OpName, ctx: &RequestCtx, model: &ModelArgs) -> Result<Value, Failure> {
    match op {
        OpName::Curvature => Ok(op_curvature(ctx)),
        OpName::Berger => Ok(op_berger(ctx)),
        OpName::BergerDecomposition => op_berger_decomposition(ctx),
        OpName::Torsion => Ok(op_torsion(ctx)),
        OpName::Classify => op_classify(ctx),
        OpName::Conditions => op_conditions(ctx),
        OpName::Infmodel => run_model(ctx.alg, model, ctx.emit_bases),
    }
}

fn op_curvature(ctx: &RequestCtx) -> Value {
    let ks = ctx.curvature();
    let pair = einstein_only(ctx.alg, ks);
    let mut out = json!({
        "dim": ks.dim(),
        "einstein_only": {"hom": pair.hom_only, "ricci": pair.ricci_only},
    });
    if ctx.emit_bases {
        out["basis"] = basis_value(ks.basis.basis());
        out["basis_coordinates"] = json!("two-form pair slow, generator coefficient fast");
    }
    out
}

fn op_berger(ctx: &RequestCtx) -> Value {
    let ks = ctx.curvature();
    let handle = berger_algebra(ctx.alg, ks);
    let verdict = match holonomy_classify(ctx.alg, ctx.seed) {
        Ok(v) => json!(v.tag.as_str()),
        Err(CurvatureError::NotIrreducible) => Value::Null,
        Err(e) => json!(format!("unavailable: {e}")),
    };
    let mut out = json!({
        "dim": handle.dim(),
        "is_ideal": is_ideal(ctx.alg, &handle),
        "verdict": verdict,
    });
    if ctx.emit_bases {
        out["basis"] = basis_value(handle.basis().basis());
        out["basis_coordinates"] = json!("algebra generator coefficients");
    }
    out
}

fn op_berger_decomposition(ctx: &RequestCtx) -> Result<Value, Failure> {
    let factors = berger_decomposition(ctx.alg, ctx.seed).map_err(|e| match e {
        CurvatureError::UndecidedSplit => Failure::outcome(format!("{e}")),
        other => Failure::invalid(format!("{other}")),
    })?;
    let sum: usize = factors.iter().map(|f| f.curvature_dim).sum();
    let rows: Vec<Value> = factors
        .iter()
        .map(|f| {
            json!({
                "algebra_dim": f.algebra.dim(),
                "curvature_dim": f.curvature_dim,
                "name": f.restricted.name(),
                "space_dim": f.space.dim(),
            })
        })
        .collect();
    Ok(json!({
        "additive": sum == ctx.curvature().dim(),
        "curvature_dim_sum": sum,
        "factors": rows,
    }))
}

fn op_torsion(ctx: &RequestCtx) -> Value {
    let spaces = torsion_spaces(ctx.alg);
    let (a, c, t) = spaces.dims();
    let mut out = json!({
        "algebra_valued_dim": a,
        "all_skew": spaces.all_skew,
        "complement_valued_dim": c,
        "three_form_dim": t,
    });
    if ctx.emit_bases {
        out["algebra_valued_basis"] = basis_value(spaces.algebra_valued.basis());
        out["complement_valued_basis"] = basis_value(spaces.complement_valued.basis());
        out["three_form_basis"] = basis_value(spaces.three_forms.basis());
        out["basis_coordinates"] =
            json!("evaluation coordinates: vector slot slow, value coefficient fast; three-forms over ordered triples");
    }
    out
}

fn op_classify(ctx: &RequestCtx) -> Result<Value, Failure> {
    let verdict = classify_invariant_torsion(ctx.alg, ctx.seed).map_err(torsion_failure)?;
    Ok(json!({"verdict": verdict.as_str()}))
}

fn op_conditions(ctx: &RequestCtx) -> Result<Value, Failure> {
    let spec = resolve_w_mode(ctx.w_mode, ctx.alg)?;
    let report = einstein_conditions(ctx.alg, &spec).map_err(torsion_failure)?;
    let parallel = parallel_criterion(ctx.alg, &spec).map_err(torsion_failure)?;
    Ok(json!({
        "cond_a": report.cond_a,
        "cond_b": report.cond_b,
        "cond_c": report.cond_c,
        "parallel": parallel,
        "w_dim": report.w_dim,
        "w_mode": ctx.w_mode,
    }))
}

/// Builds the model for one parameter pair and reports every check.
fn check_pair(
    alg: &MetricRepresentation,
    eta: &[Rational],
    lambda: &Rational,
    kappa: &Rational,
    emit_bases: bool,
) -> Result<Value, Failure> {
    let model = ansatz_model(alg, eta, lambda, kappa).map_err(model_failure)?;
    let bracket = build_bracket(&model);
    let defect = jacobi_defect(&bracket);
    let geometry = model_einstein(&model, true).map_err(model_failure)?;
    let (pos, neg, zero) = symmetric_signature(&bracket.killing_form());
    let mut out = json!({
        "effective": effectiveness_check(&bracket),
        "einstein": geometry.einstein,
        "eta_norm_squared": rat(&geometry.eta_norm_squared),
        "jacobi_max_abs_numerator": defect.norm.to_string(),
        "jacobi_zero": defect.is_zero(),
        "kappa": rat(kappa),
        "killing_signature": [pos, neg, zero],
        "lambda": rat(lambda),
        "scalar": rat(&geometry.scalar),
        "scalar_identity": geometry.identity_check,
        "total_dim": bracket.total_dim(),
    });
    if emit_bases {
        let rows: Vec<Value> = (0..geometry.ricci.rows())
            .map(|r| {
                Value::Array(
                    (0..geometry.ricci.cols())
                        .map(|c| rat(geometry.ricci.at(r, c)))
                        .collect(),
                )
            })
            .collect();
        out["ricci"] = Value::Array(rows);
    }
    Ok(out)
}

/// The `infmodel` operation: one parameter pair, or the full solve.
pub fn run_model(
    alg: &MetricRepresentation,
    args: &ModelArgs,
    emit_bases: bool,
) -> Result<Value, Failure> {
    let idx = parse_eta(&args.eta)?;
    let forms = invariant_three_forms(alg);
    if idx >= forms.dim() {
        return Err(Failure::invalid(format!(
            "--eta invariant:{idx}: index out of range (the invariant three-form space has dimension {})",
            forms.dim()
        )));
    }
    let eta = forms.basis()[idx].clone();
    let mut out = json!({
        "eta_index": idx,
        "invariant_three_form_dim": forms.dim(),
    });
    if emit_bases {
        out["eta"] = rat_vec(&eta);
        out["eta_coordinates"] = json!("ordered-triple coefficients");
    }
    if args.solve {
        let defect = family_defect(alg, &eta).map_err(model_failure)?;
        if emit_bases {
            let rendered: Vec<Value> = defect
                .iter()
                .map(|p| json!(p.render("lambda", "kappa")))
                .collect();
            out["defect_table"] = Value::Array(rendered);
        }
        match solve_family(alg, &eta).map_err(model_failure)? {
            FamilySolutions::AllPairs { representative } => {
                let (l, k) = representative;
                out["family"] = json!("all-pairs");
                out["solutions"] = Value::Array(vec![check_pair(alg, &eta, &l, &k, emit_bases)?]);
            }
            FamilySolutions::Pairs {
                pairs,
                dropped_irrational,
            } => {
                if pairs.is_empty() {
                    return Err(Failure::outcome(if dropped_irrational {
                        "no rational parameter pair closes the bracket (irrational candidates were discarded)"
                            .to_string()
                    } else {
                        "no parameter pair closes the bracket".to_string()
                    }));
                }
                out["family"] = json!("isolated");
                out["dropped_irrational"] = json!(dropped_irrational);
                let mut sols = Vec::with_capacity(pairs.len());
                for (l, k) in &pairs {
                    sols.push(check_pair(alg, &eta, l, k, emit_bases)?);
                }
                out["solutions"] = Value::Array(sols);
            }
        }
    } else {
        let (lam, kap) = match (&args.lambda, &args.kappa) {
            (Some(l), Some(k)) => (
                parse_rational("--lambda", l)?,
                parse_rational("--kappa", k)?,
            ),
            _ => {
                return Err(Failure::invalid(
                    "infmodel needs --lambda and --kappa, or --solve",
                ))
            }
        };
        out["family"] = json!("single");
        out["solutions"] = Value::Array(vec![check_pair(alg, &eta, &lam, &kap, emit_bases)?]);
    }
    Ok(out)
}
