//! Curvature analysis of metric representations: the space of algebra-valued
//! two-forms killed by the cyclic sum, Ricci contractions and the two Einstein
//! predicates, the subalgebra spanned by curvature evaluations, factorwise
//! analysis of reducible modules, and orthogonal projection onto the curvature
//! space.

use thiserror::Error;

use crate::decompose::{
    decompose_module, hom_dim, is_irreducible, restrict_product_module, ComponentStatus,
};
use crate::exactlin::elim::solve;
use crate::exactlin::matrix::RationalMatrix;
use crate::exactlin::rational::Rational;
use crate::exactlin::subspace::Subspace;
use crate::indexing::{pair_index, pairs};
use crate::liealg::{LieAlgError, MetricRepresentation, SubalgebraHandle};
use crate::tensorops::{curvature_kernel, induce, Shape, TensorRep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("the module does not split into certified components; factorwise analysis is unavailable")]
    UndecidedSplit,
    #[error("classification applies to irreducible modules only")]
    NotIrreducible,
    #[error(transparent)]
    Algebra(#[from] LieAlgError),
}

/// The space of curvature operators of a metric representation: elements of
/// Λ²V⊗𝔤 (pair index slow, generator index fast) whose cyclic sum over three
/// vector arguments vanishes, packaged with the module structure the algebra
/// induces on it.
#[derive(Debug, Clone)]
pub struct CurvatureSpace {
    /// The space as a canonical subspace of Λ²V⊗𝔤 coordinates.
    pub basis: Subspace,
    /// The restricted module structure on the space.
    pub rep: TensorRep,
}

impl CurvatureSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Dimension of the curvature space alone, skipping the module structure.
pub fn curvature_dim(alg: &MetricRepresentation) -> usize {
    curvature_kernel(alg).dim()
}

/// The two-form factor of the curvature ambient, in evaluation coordinates:
/// the slot carries the dual of the Λ² action, so the cyclic-sum kernel is an
/// invariant subspace for any diagonal metric (for the standard metric the
/// dual action coincides with the Λ² action itself). The invariant weights
/// are the reciprocals of the Λ² weights.
pub fn two_form_module(alg: &MetricRepresentation) -> TensorRep {
    let lambda2 = induce(alg, &Shape::Lambda2);
    let actions: Vec<RationalMatrix> = lambda2
        .actions()
        .iter()
        .map(|l| l.transpose().neg())
        .collect();
    let weights: Vec<Rational> = pairs(alg.n())
        .iter()
        .map(|&(i, j)| (&alg.metric()[i] * &alg.metric()[j]).recip())
        .collect();
    TensorRep::new("L2*(V)", actions, RationalMatrix::diagonal(&weights))
}

/// Builds the curvature space together with its module structure.
pub fn curvature_space(alg: &MetricRepresentation) -> CurvatureSpace {
    let basis = curvature_kernel(alg);
    let forms = two_form_module(alg);
    let glie = induce(alg, &Shape::Glie);
    let label = format!("curv({})", alg.name());
    let rep = restrict_product_module(&forms, &glie, &basis, label);
    CurvatureSpace { basis, rep }
}

/// Ricci contraction of a curvature element given in Λ²V⊗𝔤 coordinates:
/// ric(e_p, e_q) = Σ_i ⟨r(e_i, e_p)e_q, e_i⟩ over a metric-orthonormal frame,
/// which in the stored coordinates is metric-free.
pub fn ricci(alg: &MetricRepresentation, r: &[Rational]) -> RationalMatrix {
    let n = alg.n();
    let d = alg.dim();
    let pair_list = pairs(n);
    assert_eq!(r.len(), pair_list.len() * d);
    let evals: Vec<RationalMatrix> = (0..pair_list.len())
        .map(|alpha| {
            let mut m = RationalMatrix::zeros(n, n);
            for a in 0..d {
                let c = &r[alpha * d + a];
                if !c.is_zero() {
                    m.add_scaled(c, alg.generator(a));
                }
            }
            m
        })
        .collect();
    RationalMatrix::from_fn(n, n, |p, q| {
        let mut acc = Rational::zero();
        for i in 0..n {
            if i < p {
                acc += evals[pair_index(n, i, p)].at(i, q);
            } else if i > p {
                acc -= evals[pair_index(n, p, i)].at(i, q);
            }
        }
        acc
    })
}

/// Trace of a Ricci matrix against the metric: s = Σ_i ric(e_i, e_i)/g_i.
pub fn scalar_of_ricci(alg: &MetricRepresentation, ric: &RationalMatrix) -> Rational {
    let mut s = Rational::zero();
    for i in 0..alg.n() {
        s += &(ric.at(i, i) * &alg.metric()[i].recip());
    }
    s
}

/// The trace-free part of a Ricci matrix: ric − (s/n)·D. Zero exactly when
/// the contraction is proportional to the metric.
pub fn traceless_ricci(alg: &MetricRepresentation, ric: &RationalMatrix) -> RationalMatrix {
    let n = alg.n();
    let mean = &scalar_of_ricci(alg, ric) * &Rational::new(1, n as i64);
    let mut out = ric.clone();
    for i in 0..n {
        *out.at_mut(i, i) -= &(&mean * &alg.metric()[i]);
    }
    out
}

/// The two Einstein predicates, reported independently so their agreement is
/// itself checkable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EinsteinPair {
    /// Every curvature operator has Ricci contraction proportional to the
    /// metric.
    pub ricci_only: bool,
    /// The curvature space admits no equivariant map onto trace-free
    /// symmetric two-tensors.
    pub hom_only: bool,
}

/// Evaluates both Einstein predicates on a curvature space. Both hold
/// vacuously when the space is zero.
pub fn einstein_only(alg: &MetricRepresentation, ks: &CurvatureSpace) -> EinsteinPair {
    let ricci_only = ks
        .basis
        .basis()
        .iter()
        .all(|r| traceless_ricci(alg, &ricci(alg, r)).is_zero());
    let s20 = induce(alg, &Shape::Sym2Traceless);
    let hom_only = hom_dim(alg, &ks.rep, &s20) == 0;
    EinsteinPair {
        ricci_only,
        hom_only,
    }
}

/// The subalgebra spanned by all evaluations r(e_i ∧ e_j) of curvature
/// operators, read off as the per-pair generator-coefficient chunks of the
/// kernel basis.
pub fn berger_algebra(alg: &MetricRepresentation, ks: &CurvatureSpace) -> SubalgebraHandle {
    let d = alg.dim();
    let mut chunks: Vec<Vec<Rational>> = Vec::new();
    for v in ks.basis.basis() {
        for alpha in 0..v.len() / d {
            let chunk = &v[alpha * d..(alpha + 1) * d];
            if chunk.iter().any(|c| !c.is_zero()) {
                chunks.push(chunk.to_vec());
            }
        }
    }
    SubalgebraHandle::new(alg, Subspace::from_spanning(chunks, d))
}

/// Whether a subspace of the algebra is an ideal: every bracket [x_a, h]
/// stays inside it.
pub fn is_ideal(alg: &MetricRepresentation, sub: &SubalgebraHandle) -> bool {
    let d = alg.dim();
    for a in 0..d {
        for h in sub.basis().basis() {
            let mut out = vec![Rational::zero(); d];
            for (b, hb) in h.iter().enumerate() {
                if hb.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(alg.bracket_coeffs(a, b)) {
                    *o += &(hb * c);
                }
            }
            if !sub.basis().contains(&out) {
                return false;
            }
        }
    }
    true
}

/// Views a bracket-closed subalgebra as a standalone representation on the
/// same underlying space, with the same metric.
pub fn subalgebra_representation(
    alg: &MetricRepresentation,
    sub: &SubalgebraHandle,
) -> Result<MetricRepresentation, CurvatureError> {
    let name = format!("{}|span{}", alg.name(), sub.dim());
    Ok(MetricRepresentation::from_generators_with_metric(
        name,
        sub.matrices(alg),
        alg.metric().to_vec(),
    )?)
}

/// One factor of a reducible module: an invariant component together with the
/// subalgebra acting on it alone and the component reread as a standalone
/// metric representation.
#[derive(Debug, Clone)]
pub struct BergerFactor {
    /// The component, in ambient coordinates.
    pub space: Subspace,
    /// The subalgebra acting trivially on every other component.
    pub algebra: SubalgebraHandle,
    /// The factor as its own metric representation.
    pub restricted: MetricRepresentation,
    /// Curvature dimension of the factor.
    pub curvature_dim: usize,
}

/// Splits the underlying module into invariant components and extracts, per
/// component, the subalgebra acting on it alone. The curvature dimensions of
/// the factors must add up to the curvature dimension of the whole; that
/// identity is asserted.
pub fn berger_decomposition(
    alg: &MetricRepresentation,
    seed: u64,
) -> Result<Vec<BergerFactor>, CurvatureError> {
    let vec_rep = induce(alg, &Shape::V);
    let dec = decompose_module(alg, &vec_rep, seed);
    if dec
        .components
        .iter()
        .any(|c| matches!(c.status, ComponentStatus::Undecided))
    {
        return Err(CurvatureError::UndecidedSplit);
    }
    let n = alg.n();
    let d = alg.dim();
    let total: usize = dec.components.iter().map(|c| c.span.dim()).sum();
    assert_eq!(total, n, "components must exhaust the module");
    let mut factors = Vec::with_capacity(dec.components.len());
    for (idx, comp) in dec.components.iter().enumerate() {
        let others: Vec<&Vec<Rational>> = dec
            .components
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .flat_map(|(_, c)| c.span.basis().iter())
            .collect();
        let mut constraints = RationalMatrix::zeros(others.len() * n, d);
        for (bi, b) in others.iter().enumerate() {
            for a in 0..d {
                let image = alg.generator(a).mul_vec(b);
                for (r, val) in image.into_iter().enumerate() {
                    if !val.is_zero() {
                        constraints.set(bi * n + r, a, val);
                    }
                }
            }
        }
        let algebra = SubalgebraHandle::new(alg, Subspace::kernel_of(&constraints));
        let restricted = restrict_to_component(alg, &algebra, &comp.span)?;
        let curvature_dim = curvature_dim(&restricted);
        factors.push(BergerFactor {
            space: comp.span.clone(),
            algebra,
            restricted,
            curvature_dim,
        });
    }
    let sum: usize = factors.iter().map(|f| f.curvature_dim).sum();
    assert_eq!(
        sum,
        curvature_dim(alg),
        "factor curvature dimensions must be additive"
    );
    Ok(factors)
}

/// Rereads an invariant component as a standalone metric representation: the
/// component basis is orthogonalized against the metric, the subalgebra
/// matrices are rewritten in that basis, and the inherited metric is the
/// diagonal of norms.
fn restrict_to_component(
    alg: &MetricRepresentation,
    sub: &SubalgebraHandle,
    span: &Subspace,
) -> Result<MetricRepresentation, CurvatureError> {
    let metric = alg.metric();
    let pairing = |u: &[Rational], v: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for ((ui, vi), g) in u.iter().zip(v).zip(metric) {
            if !ui.is_zero() && !vi.is_zero() {
                acc += &(&(ui * vi) * g);
            }
        }
        acc
    };
    let mut ortho: Vec<Vec<Rational>> = Vec::with_capacity(span.dim());
    let mut norms: Vec<Rational> = Vec::new();
    for b in span.basis() {
        let mut w = b.clone();
        for (o, h) in ortho.iter().zip(&norms) {
            let c = &pairing(b, o) / h;
            if !c.is_zero() {
                for (wi, oi) in w.iter_mut().zip(o) {
                    *wi -= &(&c * oi);
                }
            }
        }
        clear_content(&mut w);
        let h = pairing(&w, &w);
        assert!(h.is_positive(), "metric must be definite on the component");
        norms.push(h);
        ortho.push(w);
    }
    let k = ortho.len();
    let gens: Vec<RationalMatrix> = sub
        .matrices(alg)
        .into_iter()
        .map(|x| {
            let images: Vec<Vec<Rational>> = ortho.iter().map(|w| x.mul_vec(w)).collect();
            RationalMatrix::from_fn(k, k, |r, c| &pairing(&images[c], &ortho[r]) / &norms[r])
        })
        .collect();
    let name = format!("{}|{}d-component", alg.name(), k);
    Ok(MetricRepresentation::from_generators_with_metric(
        name, gens, norms,
    )?)
}

/// Scales a vector to a primitive integer multiple (for tidy orthogonal
/// bases); a zero vector is left alone.
fn clear_content(v: &mut [Rational]) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for x in v.iter() {
        if x.is_zero() {
            continue;
        }
        denom_lcm = denom_lcm.lcm(x.denom());
        numer_gcd = numer_gcd.gcd(&x.numer().abs());
    }
    if numer_gcd.is_zero() {
        return;
    }
    let scale = &Rational::from_bigint(denom_lcm) * &Rational::from_bigint(numer_gcd).recip();
    for x in v.iter_mut() {
        let scaled = &*x * &scale;
        *x = scaled;
    }
}

/// Orthogonal projection onto the curvature space inside Λ²V⊗𝔤, with respect
/// to the invariant pairing (Λ²-weights on pairs, half the trace form on the
/// algebra). Returns the curvature-space coordinates of the projection and
/// the complementary part in ambient coordinates.
pub fn project_to_k(
    alg: &MetricRepresentation,
    ks: &CurvatureSpace,
    r: &[Rational],
) -> (Vec<Rational>, Vec<Rational>) {
    let pair_list = pairs(alg.n());
    let d = alg.dim();
    assert_eq!(r.len(), pair_list.len() * d);
    let weights: Vec<Rational> = pair_list
        .iter()
        .map(|&(i, j)| (&alg.metric()[i] * &alg.metric()[j]).recip())
        .collect();
    let half = Rational::new(1, 2);
    let gram = RationalMatrix::diagonal(&weights).kronecker(&alg.trace_form().scale(&half));
    let b = ks.basis.basis_columns();
    let gb = gram.mul(&b);
    let gk = b.transpose().mul(&gb);
    let rhs = gb.transpose().mul_vec(r);
    let coords = solve(&gk, &rhs).expect("invariant pairing must restrict nondegenerately");
    let mut inside = vec![Rational::zero(); r.len()];
    for (c, row) in coords.iter().zip(ks.basis.basis()) {
        if !c.is_zero() {
            for (o, v) in inside.iter_mut().zip(row) {
                *o += &(c * v);
            }
        }
    }
    let rest: Vec<Rational> = r.iter().zip(&inside).map(|(a, b)| a - b).collect();
    (coords, rest)
}

/// Outcome tags for the classification of irreducible modules by their
/// curvature evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    /// No curvature operators at all.
    ZeroCurvature,
    /// Curvature evaluations span the whole algebra.
    HolonomyRepresentation,
    /// Curvature evaluations span a proper nonzero subalgebra.
    SpnU1Exception,
}

impl VerdictTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::ZeroCurvature => "ZeroCurvature",
            VerdictTag::HolonomyRepresentation => "HolonomyRepresentation",
            VerdictTag::SpnU1Exception => "SpnU1Exception",
        }
    }
}

/// Classification report for an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub tag: VerdictTag,
    pub berger_dim: usize,
    /// The Ricci-proportionality predicate (the full pair is in `details`).
    pub einstein_only: bool,
    pub details: String,
}

/// Classifies an irreducible module by comparing the span of its curvature
/// evaluations with the full algebra.
pub fn holonomy_classify(
    alg: &MetricRepresentation,
    seed: u64,
) -> Result<ClassificationVerdict, CurvatureError> {
    let vec_rep = induce(alg, &Shape::V);
    if !is_irreducible(alg, &vec_rep, seed).irreducible {
        return Err(CurvatureError::NotIrreducible);
    }
    let ks = curvature_space(alg);
    if ks.dim() == 0 {
        return Ok(ClassificationVerdict {
            tag: VerdictTag::ZeroCurvature,
            berger_dim: 0,
            einstein_only: true,
            details: "curvature space is zero; Einstein predicates hold vacuously".into(),
        });
    }
    let pair = einstein_only(alg, &ks);
    let berger = berger_algebra(alg, &ks);
    let berger_dim = berger.dim();
    let tag = if berger_dim == alg.dim() {
        VerdictTag::HolonomyRepresentation
    } else {
        assert!(berger_dim > 0, "nonzero curvature must evaluate somewhere");
        VerdictTag::SpnU1Exception
    };
    let details = format!(
        "curvature evaluations span {berger_dim} of {} algebra dimensions; einstein predicates (ricci={}, hom={})",
        alg.dim(),
        pair.ricci_only,
        pair.hom_only
    );
    Ok(ClassificationVerdict {
        tag,
        berger_dim,
        einstein_only: pair.ricci_only,
        details,
    })
}

/// The full rotation algebra of the metric, as a metric representation with
/// generators indexed by pairs.
pub fn ambient_rotation_algebra(alg: &MetricRepresentation) -> MetricRepresentation {
    let n = alg.n();
    let g = alg.metric();
    let gens: Vec<RationalMatrix> = pairs(n)
        .iter()
        .map(|&(i, j)| {
            let mut m = RationalMatrix::zeros(n, n);
            m.set(j, i, g[i].clone());
            m.set(i, j, -&g[j]);
            m
        })
        .collect();
    MetricRepresentation::from_generators_with_metric(format!("rot({n})"), gens, g.to_vec())
        .expect("rotation generators are metric-skew and independent")
}

/// Cross-checks the curvature dimension through the ambient rotation algebra:
/// symmetric squares of the algebra's span in rotation coordinates,
/// intersected with the ambient curvature space, must have the dimension of
/// the algebra's own curvature space.
pub fn symmetric_span_curvature_dim(alg: &MetricRepresentation) -> usize {
    let ambient = ambient_rotation_algebra(alg);
    let ambient_kernel = curvature_kernel(&ambient);
    let span = alg.span_in_so();
    let p = span.ambient();
    let u = span.basis();
    // A symmetric product A∘B of rotation algebra elements embeds into
    // evaluation coordinates as r(e_α) = w_α(a_α B + b_α A), with w_α the
    // Λ²-weight of the pair α.
    let weights: Vec<Rational> = pairs(alg.n())
        .iter()
        .map(|&(i, j)| &alg.metric()[i] * &alg.metric()[j])
        .collect();
    let mut sym: Vec<Vec<Rational>> = Vec::new();
    for (i, ui) in u.iter().enumerate() {
        for uj in &u[i..] {
            let mut v = vec![Rational::zero(); p * p];
            for (a, xa) in ui.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in uj.iter().enumerate() {
                    if !yb.is_zero() {
                        v[a * p + b] += &(&(xa * yb) * &weights[a]);
                    }
                }
            }
            for (a, xa) in uj.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in ui.iter().enumerate() {
                    if !yb.is_zero() {
                        v[a * p + b] += &(&(xa * yb) * &weights[a]);
                    }
                }
            }
            sym.push(v);
        }
    }
    Subspace::from_spanning(sym, p * p)
        .intersect(&ambient_kernel)
        .dim()
}
