//! Invariant torsion analysis: the candidate spaces where a metric connection
//! with skew torsion can have invariant components, vanishing conditions that
//! force every compatible geometry to be Einstein, a pointwise criterion for
//! parallel torsion, and a coarse classification of the invariant part.

use thiserror::Error;

use crate::curvature::{curvature_dim, curvature_space};
use crate::decompose::{
    hom_dim, invariants, is_irreducible, is_simple, module_isomorphic,
};
use crate::exactlin::matrix::RationalMatrix;
use crate::exactlin::rational::Rational;
use crate::exactlin::subspace::Subspace;
use crate::liealg::MetricRepresentation;
use crate::tensorops::{
    induce, restrict, skew_part_check, sym2_of_rep, tensor_product, three_form_components,
    is_totally_skew, Shape, TensorRep,
};

/// Failure modes of the torsion analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    /// An explicitly supplied torsion module is not an invariant subspace of
    /// the complement-valued one-forms.
    #[error("torsion module spans must be action-closed inside the complement-valued one-forms")]
    WNotInvariant,
    /// The classification is defined for irreducible modules only.
    #[error("invariant-torsion classification needs an irreducible module")]
    NotIrreducible,
    /// An invariant algebra-valued one-form exists although the algebra is
    /// not simple with the module carrying its own bracket action — that
    /// combination is structurally impossible, so hitting it means the input
    /// violates the assumptions the classification relies on.
    #[error("invariant algebra-valued torsion outside the simple bracket-module situation")]
    LemmaViolation,
}

/// The three candidate homes of an invariant torsion tensor.
#[derive(Debug, Clone)]
pub struct TorsionSpaces {
    /// Invariant algebra-valued one-forms, stored as evaluations (V index
    /// slow, generator coefficients of the value fast).
    pub algebra_valued: Subspace,
    /// Invariant one-forms valued in 𝔤^⊥, the orthocomplement of the algebra
    /// inside so(V); same evaluation layout with complement coefficients.
    pub complement_valued: Subspace,
    /// Invariant alternating three-tensors (ordered-triple coordinates).
    pub three_forms: Subspace,
    /// Whether every invariant in the corresponding space is totally skew as
    /// a trilinear form.
    pub all_skew: [bool; 3],
}

impl TorsionSpaces {
    pub fn dims(&self) -> (usize, usize, usize) {
        (
            self.algebra_valued.dim(),
            self.complement_valued.dim(),
            self.three_forms.dim(),
        )
    }
}

/// Module structure on the orthocomplement of the algebra inside so(V).
pub fn complement_module(alg: &MetricRepresentation) -> TensorRep {
    restrict(&induce(alg, &Shape::So), &alg.orthocomplement_in_so())
}

/// The dual of the defining module. One-form-valued tensors store their
/// evaluations on the basis vectors, so their first slot transforms by
/// minus-transpose and pairs through the inverse metric; for the standard
/// metric this coincides with the defining module itself.
pub fn one_form_module(alg: &MetricRepresentation) -> TensorRep {
    let n = alg.n();
    let actions = (0..alg.dim())
        .map(|a| alg.generator(a).transpose().neg())
        .collect();
    let gram = RationalMatrix::from_fn(n, n, |i, j| {
        if i == j {
            alg.metric()[i].recip()
        } else {
            Rational::zero()
        }
    });
    TensorRep::new(format!("dual({})", alg.name()), actions, gram)
}

/// Expands an element of V⊗𝔤 (generator coefficients) into rotation-pair
/// coordinates on V⊗so(V).
fn algebra_valued_to_rotation(alg: &MetricRepresentation, t: &[Rational]) -> Vec<Rational> {
    let d = alg.dim();
    let n = alg.n();
    let p = n * (n - 1) / 2;
    let mut out = vec![Rational::zero(); n * p];
    for i in 0..n {
        let m = alg.combination(&t[i * d..(i + 1) * d]);
        out[i * p..(i + 1) * p].clone_from_slice(&alg.so_coordinates(&m));
    }
    out
}

/// Expands an element of V⊗𝔤^⊥ (complement-basis coefficients) into
/// rotation-pair coordinates on V⊗so(V).
fn complement_valued_to_rotation(
    alg: &MetricRepresentation,
    complement: &Subspace,
    t: &[Rational],
) -> Vec<Rational> {
    let k = complement.dim();
    let n = alg.n();
    let p = n * (n - 1) / 2;
    let mut out = vec![Rational::zero(); n * p];
    for i in 0..n {
        for (c, row) in t[i * k..(i + 1) * k].iter().zip(complement.basis()) {
            if !c.is_zero() {
                for (slot, x) in row.iter().enumerate() {
                    out[i * p + slot] += &(c * x);
                }
            }
        }
    }
    out
}

/// Computes the three candidate spaces of invariant torsion together with
/// total-skewness of each invariant element.
pub fn torsion_spaces(alg: &MetricRepresentation) -> TorsionSpaces {
    let dual = one_form_module(alg);
    let glie = induce(alg, &Shape::Glie);
    let complement = alg.orthocomplement_in_so();

    let algebra_valued = invariants(&tensor_product(&dual, &glie));
    let skew_alg = algebra_valued
        .basis()
        .iter()
        .all(|t| skew_part_check(alg, &algebra_valued_to_rotation(alg, t)));

    let complement_valued = invariants(&tensor_product(&dual, &complement_module(alg)));
    let skew_comp = complement_valued
        .basis()
        .iter()
        .all(|t| skew_part_check(alg, &complement_valued_to_rotation(alg, &complement, t)));

    let three_forms = invariants(&induce(alg, &Shape::Lambda3));
    let skew_three = three_forms
        .basis()
        .iter()
        .all(|t| is_totally_skew(&three_form_components(alg, t)));

    TorsionSpaces {
        algebra_valued,
        complement_valued,
        three_forms,
        all_skew: [skew_alg, skew_comp, skew_three],
    }
}

/// How the candidate torsion module W inside the complement-valued one-forms
/// is chosen.
#[derive(Debug, Clone)]
pub enum TorsionModuleSpec {
    /// The whole space V⊗𝔤^⊥.
    Full,
    /// The joint-invariant subspace (V⊗𝔤^⊥)^𝔤 — every element the algebra
    /// fixes, not a single chosen line.
    Invariant,
    /// An explicit span in evaluation coordinates (V index slow, complement
    /// coefficients fast); must be action-closed.
    Explicit(Subspace),
}

/// A resolved torsion module: its restricted module structure and whether the
/// algebra acts trivially on it (which lets the condition checks factor the
/// triple tensor products instead of materializing them).
struct ResolvedW {
    rep: TensorRep,
    trivial: bool,
}

fn resolve_w(alg: &MetricRepresentation, spec: &TorsionModuleSpec) -> Result<ResolvedW, TorsionError> {
    let ambient = tensor_product(&one_form_module(alg), &complement_module(alg));
    let rep = match spec {
        TorsionModuleSpec::Full => ambient,
        TorsionModuleSpec::Invariant => {
            let basis = invariants(&ambient);
            restrict(&ambient, &basis)
        }
        TorsionModuleSpec::Explicit(basis) => {
            if basis.ambient() != ambient.dim() {
                return Err(TorsionError::WNotInvariant);
            }
            for w in basis.basis() {
                for a in 0..ambient.algebra_dim() {
                    let image = ambient.action(a).mul_vec(w);
                    if basis.coords(&image).is_none() {
                        return Err(TorsionError::WNotInvariant);
                    }
                }
            }
            restrict(&ambient, basis)
        }
    };
    let trivial = rep.actions().iter().all(|m| m.is_zero());
    Ok(ResolvedW { rep, trivial })
}

/// The three vanishing conditions checked against a torsion module W.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    /// No invariant pairing between V⊗W and the trace-free symmetric square.
    pub cond_a: bool,
    /// No invariant pairing between S²W and the trace-free symmetric square.
    pub cond_b: bool,
    /// No invariant pairing between the curvature space and the trace-free
    /// symmetric square (the same obstruction the Einstein predicate tests).
    pub cond_c: bool,
    pub w_dim: usize,
}

/// Evaluates the conditions under which every compatible geometry with
/// torsion in W is forced to be Einstein. When the algebra acts trivially on
/// W the first two conditions factor: V⊗W ≅ (dim W) copies of V and S²W is a
/// trivial module, so only invariant content of V and of the trace-free
/// symmetric square matters.
pub fn einstein_conditions(
    alg: &MetricRepresentation,
    spec: &TorsionModuleSpec,
) -> Result<ConditionReport, TorsionError> {
    let w = resolve_w(alg, spec)?;
    let s20 = induce(alg, &Shape::Sym2Traceless);
    let v = induce(alg, &Shape::V);
    let (cond_a, cond_b) = if w.rep.dim() == 0 {
        (true, true)
    } else if w.trivial {
        (
            hom_dim(alg, &v, &s20) == 0,
            invariants(&s20).dim() == 0,
        )
    } else {
        (
            hom_dim(alg, &tensor_product(&v, &w.rep), &s20) == 0,
            hom_dim(alg, &sym2_of_rep(&w.rep), &s20) == 0,
        )
    };
    let ks = curvature_space(alg);
    let cond_c = hom_dim(alg, &ks.rep, &s20) == 0;
    Ok(ConditionReport {
        cond_a,
        cond_b,
        cond_c,
        w_dim: w.rep.dim(),
    })
}

/// Whether no invariant pairing exists between V⊗W and S²W — the obstruction
/// to concluding that torsion valued in W must be parallel. A trivially-acted
/// W reduces this to the absence of invariant vectors in V itself.
pub fn parallel_criterion(
    alg: &MetricRepresentation,
    spec: &TorsionModuleSpec,
) -> Result<bool, TorsionError> {
    let w = resolve_w(alg, spec)?;
    let v = induce(alg, &Shape::V);
    Ok(if w.rep.dim() == 0 {
        true
    } else if w.trivial {
        invariants(&v).dim() == 0
    } else {
        hom_dim(alg, &tensor_product(&v, &w.rep), &sym2_of_rep(&w.rep)) == 0
    })
}

/// Coarse classification of where an irreducible module's invariant skew
/// torsion can live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// Neither the algebra-valued nor the complement-valued one-forms carry
    /// an invariant element.
    NoInvariantSkewTorsion,
    /// An invariant algebra-valued one-form exists; this forces the algebra
    /// to be simple with V its own bracket module, and the invariant is a
    /// multiple of the bracket three-form.
    AdjointType,
    /// An invariant complement-valued one-form coexists with a nonzero
    /// curvature space.
    WeakHolonomyType,
    /// An invariant complement-valued one-form exists but the curvature
    /// space is zero, so no compatible curvature operator can support it.
    Unclassified,
}

impl TorsionVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorsionVerdict::NoInvariantSkewTorsion => "NoInvariantSkewTorsion",
            TorsionVerdict::AdjointType => "AdjointType",
            TorsionVerdict::WeakHolonomyType => "WeakHolonomyType",
            TorsionVerdict::Unclassified => "Unclassified",
        }
    }
}

/// Classifies the invariant skew torsion of an irreducible module. The
/// structural guarantee behind `AdjointType` is checked, never assumed: its
/// failure surfaces as an error instead of a silent misclassification.
pub fn classify_invariant_torsion(
    alg: &MetricRepresentation,
    seed: u64,
) -> Result<TorsionVerdict, TorsionError> {
    let v = induce(alg, &Shape::V);
    if !is_irreducible(alg, &v, seed).irreducible {
        return Err(TorsionError::NotIrreducible);
    }
    let spaces = torsion_spaces(alg);
    let (algebra_valued, complement_valued, _) = spaces.dims();
    if algebra_valued > 0 {
        let glie = induce(alg, &Shape::Glie);
        if !is_simple(alg, seed) || !module_isomorphic(alg, &v, &glie) {
            return Err(TorsionError::LemmaViolation);
        }
        return Ok(TorsionVerdict::AdjointType);
    }
    if complement_valued == 0 {
        return Ok(TorsionVerdict::NoInvariantSkewTorsion);
    }
    Ok(if curvature_dim(alg) > 0 {
        TorsionVerdict::WeakHolonomyType
    } else {
        TorsionVerdict::Unclassified
    })
}

/// Everything the torsion analysis has to say about one module.
#[derive(Debug, Clone)]
pub struct TorsionReport {
    pub invariant_dims: (usize, usize, usize),
    pub all_skew: [bool; 3],
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub parallel: bool,
    pub w_dim: usize,
    /// None when the module is reducible (the classification does not apply).
    pub verdict: Option<TorsionVerdict>,
}

pub fn torsion_report(
    alg: &MetricRepresentation,
    spec: &TorsionModuleSpec,
    seed: u64,
) -> Result<TorsionReport, TorsionError> {
    let spaces = torsion_spaces(alg);
    let conditions = einstein_conditions(alg, spec)?;
    let parallel = parallel_criterion(alg, spec)?;
    let verdict = match classify_invariant_torsion(alg, seed) {
        Ok(v) => Some(v),
        Err(TorsionError::NotIrreducible) => None,
        Err(e) => return Err(e),
    };
    Ok(TorsionReport {
        invariant_dims: spaces.dims(),
        all_skew: spaces.all_skew,
        cond_a: conditions.cond_a,
        cond_b: conditions.cond_b,
        cond_c: conditions.cond_c,
        parallel,
        w_dim: conditions.w_dim,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::curvature::einstein_only;
    use crate::decompose::DEFAULT_SEED;
    use crate::exactlin::matrix::RationalMatrix;
    use crate::liealg::MetricRepresentation;

    fn rational(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn exceptional_stabilizer_torsion_spaces() {
        let alg = catalog::g2();
        let spaces = torsion_spaces(&alg);
        assert_eq!(spaces.dims(), (0, 1, 1));
        assert_eq!(spaces.all_skew, [true, true, true]);
    }

    #[test]
    fn six_dimensional_unitary_torsion_spaces() {
        let alg = catalog::su_n(3);
        let spaces = torsion_spaces(&alg);
        assert_eq!(spaces.dims(), (0, 2, 2));
        assert_eq!(spaces.all_skew, [true, true, true]);
    }

    #[test]
    fn bracket_module_torsion_is_adjoint_type() {
        let alg = catalog::adjoint_of(&catalog::su_n(3)).unwrap();
        let spaces = torsion_spaces(&alg);
        assert_eq!(spaces.algebra_valued.dim(), 1);
        assert!(spaces.all_skew[0]);
        // The invariant is the tautological intertwiner sending each module
        // basis vector to the matching generator; its trilinear form is the
        // bracket three-form ⟨[X,Y],Z⟩.
        let d = alg.dim();
        let mut tautological = vec![Rational::zero(); d * d];
        for i in 0..d {
            tautological[i * d + i] = rational(1);
        }
        assert!(spaces.algebra_valued.coords(&tautological).is_some());
        assert_eq!(
            classify_invariant_torsion(&alg, DEFAULT_SEED),
            Ok(TorsionVerdict::AdjointType)
        );
    }

    #[test]
    fn rotation_algebra_in_three_dimensions_is_its_own_bracket_module() {
        let alg = catalog::so_n(3);
        assert_eq!(
            classify_invariant_torsion(&alg, DEFAULT_SEED),
            Ok(TorsionVerdict::AdjointType)
        );
    }

    #[test]
    fn quaternionic_line_has_no_invariant_torsion() {
        let alg = catalog::su_n(2);
        assert_eq!(
            classify_invariant_torsion(&alg, DEFAULT_SEED),
            Ok(TorsionVerdict::NoInvariantSkewTorsion)
        );
    }

    #[test]
    fn weak_holonomy_verdicts() {
        assert_eq!(
            classify_invariant_torsion(&catalog::g2(), DEFAULT_SEED),
            Ok(TorsionVerdict::WeakHolonomyType)
        );
        assert_eq!(
            classify_invariant_torsion(&catalog::su_n(3), DEFAULT_SEED),
            Ok(TorsionVerdict::WeakHolonomyType)
        );
    }

    #[test]
    fn reducible_module_is_rejected() {
        let alg = catalog::diagonal_copies(&catalog::so_n(3), 2);
        assert_eq!(
            classify_invariant_torsion(&alg, DEFAULT_SEED),
            Err(TorsionError::NotIrreducible)
        );
    }

    #[test]
    fn exceptional_stabilizer_invariant_conditions_all_hold() {
        let alg = catalog::g2();
        let report = einstein_conditions(&alg, &TorsionModuleSpec::Invariant).unwrap();
        assert_eq!(report.w_dim, 1);
        assert!(report.cond_a && report.cond_b && report.cond_c);
        assert!(parallel_criterion(&alg, &TorsionModuleSpec::Invariant).unwrap());
    }

    #[test]
    fn unitary_plane_fails_the_curvature_condition() {
        let alg = catalog::u_n(2);
        let report = einstein_conditions(&alg, &TorsionModuleSpec::Full).unwrap();
        assert!(!report.cond_c);
    }

    #[test]
    fn curvature_condition_matches_einstein_predicate() {
        for alg in [catalog::so_n(4), catalog::u_n(2), catalog::su_n(2)] {
            let ks = curvature_space(&alg);
            let pair = einstein_only(&alg, &ks);
            let report = einstein_conditions(&alg, &TorsionModuleSpec::Invariant).unwrap();
            assert_eq!(report.cond_c, pair.hom_only, "{}", alg.name());
        }
    }

    #[test]
    fn trivial_summand_defeats_the_parallel_criterion() {
        // One rotation generator acting on a plane plus a fixed axis.
        let mut m = RationalMatrix::zeros(3, 3);
        m.set(0, 1, rational(-1));
        m.set(1, 0, rational(1));
        let alg = MetricRepresentation::from_generators("axis", vec![m]).unwrap();
        let w = resolve_w(&alg, &TorsionModuleSpec::Invariant).unwrap();
        assert!(w.rep.dim() > 0, "the witness needs a nonzero torsion module");
        assert!(!parallel_criterion(&alg, &TorsionModuleSpec::Invariant).unwrap());
    }

    #[test]
    fn explicit_module_must_be_action_closed() {
        let alg = catalog::u_n(2);
        let ambient = tensor_product(&one_form_module(&alg), &complement_module(&alg));
        // A coordinate line is not invariant under u(2).
        let mut line = vec![Rational::zero(); ambient.dim()];
        line[0] = rational(1);
        let spec = TorsionModuleSpec::Explicit(Subspace::from_spanning(vec![line], ambient.dim()));
        assert_eq!(
            einstein_conditions(&alg, &spec),
            Err(TorsionError::WNotInvariant),
        );
        // The full invariant subspace, handed over explicitly, is accepted.
        let inv = invariants(&ambient);
        let explicit = TorsionModuleSpec::Explicit(inv);
        assert!(einstein_conditions(&alg, &explicit).is_ok());
    }

    #[test]
    fn full_mode_report_for_the_rotation_algebra() {
        // so(4) fills all of so(V): the complement is zero, so every
        // W-dependent condition holds vacuously while the curvature
        // condition still fails.
        let report = torsion_report(
            &catalog::so_n(4),
            &TorsionModuleSpec::Full,
            DEFAULT_SEED,
        )
        .unwrap();
        assert_eq!(report.w_dim, 0);
        assert!(report.cond_a && report.cond_b && !report.cond_c);
        assert!(report.parallel);
        assert_eq!(report.invariant_dims, (0, 0, 0));
        assert_eq!(report.verdict, Some(TorsionVerdict::NoInvariantSkewTorsion));
    }
}
