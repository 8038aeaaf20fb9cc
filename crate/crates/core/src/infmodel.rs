//! Homogeneous-model candidates built from an invariant three-form: the
//! quadratic torsion tensors, the affine family of compatible curvature
//! operators, the bracket the pair generates on 𝔤⊕V, its Jacobi defect, and
//! the Einstein property of the resulting geometry.
//!
//! Sign and contraction conventions, fixed once for the whole module:
//! three-forms are stored in ordered-triple coordinates; the contraction
//! endomorphisms η_X of `tensorops::three_form_components` satisfy
//! ⟨η_{e_p} e_q, e_r⟩ = η(e_p, e_q, e_r); the torsion of a model is
//! T_X Y = −2 η_X Y; the quadratic tensors are
//! (η²)_{X,Y} = [η_X, η_Y] − η_{η_X Y − η_Y X},
//! η²_{X,Y}  = −η_{η_X Y}, and
//! b₁η²_{X,Y} = (η_X·η)_Y, the one-form component of the rotation action of
//! η_X on η itself; the decomposition (η²) = η² + b₁η² is asserted at run
//! time since the two sides come from independent computations. The squared
//! norm of η is half the double sum Σ_{i,j} ⟨η_{e_i} e_j, η_{e_i} e_j⟩ (the
//! double sum counts each contraction twice), which makes the scalar identity
//! s = 2(1+κ)‖η‖² of a closed model hold as an exact rational equality.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::curvature::{
    ambient_rotation_algebra, ricci, scalar_of_ricci, traceless_ricci,
};
use crate::decompose::invariants;
use crate::exactlin::elim::{self, SpanSolver};
use crate::exactlin::matrix::RationalMatrix;
use crate::exactlin::poly::{Poly, Poly2};
use crate::exactlin::rational::Rational;
use crate::exactlin::subspace::Subspace;
use crate::indexing::{pair_index, pairs, triples};
use crate::liealg::MetricRepresentation;
use crate::tensorops::{b1_matrix, curvature_kernel, induce, three_form_components, Shape};

/// Failure modes of the model constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// The supplied three-form is not fixed by the algebra.
    #[error("the three-form is not invariant under the algebra")]
    EtaNotInvariant,
    /// The curvature equation admits no solution for this three-form.
    #[error("no curvature operator is compatible with this three-form")]
    NoSolution,
    /// The scalar-curvature identity needs the proportionality ansatz.
    #[error("the scalar identity check needs the curvature-proportionality ansatz")]
    AnsatzMissing,
    /// The proportionality ansatz produces values outside the algebra.
    #[error("the quadratic curvature ansatz leaves the algebra")]
    AnsatzOutsideAlgebra,
    /// The parameter solver met a solution set it cannot enumerate.
    #[error("the parameter solution set is not a finite list of points")]
    Underdetermined,
}

/// Basis of the invariant three-forms, in ordered-triple coordinates.
pub fn invariant_three_forms(alg: &MetricRepresentation) -> Subspace {
    invariants(&induce(alg, &Shape::Lambda3))
}

/// Whether the algebra fixes the three-form.
pub fn is_invariant_three_form(alg: &MetricRepresentation, eta: &[Rational]) -> bool {
    induce(alg, &Shape::Lambda3)
        .actions()
        .iter()
        .all(|rho| rho.mul_vec(eta).iter().all(Rational::is_zero))
}

/// The quadratic torsion tensors of a three-form, all in Λ²V⊗so(V)
/// coordinates (pair index slow, rotation-pair index fast).
#[derive(Debug, Clone)]
pub struct QuadraticTorsion {
    /// The curvature-type combination (η²).
    pub full: Vec<Rational>,
    /// The algebraic piece η².
    pub algebraic: Vec<Rational>,
    /// The coboundary piece b₁η².
    pub coboundary: Vec<Rational>,
}

/// Computes (η²), η², and b₁η², asserting the decomposition
/// (η²) = η² + b₁η² — the left side comes from commutators of contraction
/// endomorphisms, the right side's coboundary from the rotation action on the
/// three-form, so agreement cross-checks two independent pipelines.
pub fn eta_squared(alg: &MetricRepresentation, eta: &[Rational]) -> QuadraticTorsion {
    let n = alg.n();
    let comps = three_form_components(alg, eta);
    let ambient = ambient_rotation_algebra(alg);
    let lambda3 = induce(&ambient, &Shape::Lambda3);
    let pair_list = pairs(n);
    let p = pair_list.len();
    let mut full = vec![Rational::zero(); p * p];
    let mut algebraic = vec![Rational::zero(); p * p];
    let mut coboundary = vec![Rational::zero(); p * p];
    // The rotation action of each contraction endomorphism on η itself.
    let acted: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            lambda3
                .action_of(&alg.so_coordinates(&comps[i]))
                .mul_vec(eta)
        })
        .collect();
    for (alpha, &(i, j)) in pair_list.iter().enumerate() {
        let v = comps[i].col_vec(j);
        let mut contracted = RationalMatrix::zeros(n, n);
        for (c, mc) in v.iter().zip(&comps) {
            if !c.is_zero() {
                contracted.add_scaled(c, mc);
            }
        }
        let two = Rational::from(2);
        let full_m = comps[i]
            .commutator(&comps[j])
            .sub(&contracted.scale(&two));
        let algebraic_m = contracted.neg();
        let coboundary_m = three_form_components(alg, &acted[i])
            .swap_remove(j);
        assert_eq!(
            full_m,
            algebraic_m.add(&coboundary_m),
            "quadratic-torsion decomposition must close"
        );
        full[alpha * p..(alpha + 1) * p].clone_from_slice(&alg.so_coordinates(&full_m));
        algebraic[alpha * p..(alpha + 1) * p]
            .clone_from_slice(&alg.so_coordinates(&algebraic_m));
        coboundary[alpha * p..(alpha + 1) * p]
            .clone_from_slice(&alg.so_coordinates(&coboundary_m));
    }
    QuadraticTorsion {
        full,
        algebraic,
        coboundary,
    }
}

/// Squared norm of a three-form, evaluated through the double sum
/// Σ_{i,j} ⟨η_{e_i} e_j, η_{e_i} e_j⟩ — which counts every contraction twice,
/// so the norm is half of it. (The sum over ordered triples differs from the
/// double sum by a factor of six for a standard metric.)
pub fn eta_norm_squared(alg: &MetricRepresentation, eta: &[Rational]) -> Rational {
    let n = alg.n();
    let comps = three_form_components(alg, eta);
    let mut acc = Rational::zero();
    for comp in &comps {
        for j in 0..n {
            for k in 0..n {
                let x = comp.at(k, j);
                if !x.is_zero() {
                    acc += &(&(x * x) * &alg.metric()[k]);
                }
            }
        }
    }
    &acc / &Rational::from(2)
}

/// The affine solution set of the curvature equation: one particular
/// curvature operator (Λ²V⊗𝔤 coordinates) plus the full curvature kernel.
#[derive(Debug, Clone)]
pub struct CurvatureSolution {
    pub particular: Vec<Rational>,
    pub kernel: Subspace,
}

/// Solves the linear curvature equation b₁R = −b₁((η²)) for an
/// algebra-valued curvature operator.
pub fn solve_rhat(
    alg: &MetricRepresentation,
    eta: &[Rational],
) -> Result<CurvatureSolution, ModelError> {
    let q = eta_squared(alg, eta);
    let ambient = ambient_rotation_algebra(alg);
    let rhs: Vec<Rational> = b1_matrix(&ambient)
        .mul_vec(&q.full)
        .iter()
        .map(|x| -x)
        .collect();
    let particular =
        elim::solve(&b1_matrix(alg), &rhs).map_err(|_| ModelError::NoSolution)?;
    Ok(CurvatureSolution {
        particular,
        kernel: curvature_kernel(alg),
    })
}

/// A homogeneous-model candidate: an invariant three-form together with a
/// compatible algebra-valued curvature operator.
#[derive(Debug, Clone)]
pub struct InfinitesimalModel {
    pub alg: MetricRepresentation,
    /// Invariant three-form, ordered-triple coordinates.
    pub eta: Vec<Rational>,
    /// Curvature operator, Λ²V⊗𝔤 coordinates (pair slow, generator fast).
    pub rhat: Vec<Rational>,
    /// Recorded scale of the three-form relative to the chosen invariant.
    pub lambda: Rational,
    /// Present when rhat = κ·(η²); unlocks the scalar-curvature identity.
    pub kappa: Option<Rational>,
}

/// Builds a model from explicit parts, validating invariance and shapes.
pub fn model_from_parts(
    alg: &MetricRepresentation,
    eta: Vec<Rational>,
    rhat: Vec<Rational>,
    lambda: Rational,
) -> Result<InfinitesimalModel, ModelError> {
    if !is_invariant_three_form(alg, &eta) {
        return Err(ModelError::EtaNotInvariant);
    }
    let p = alg.n() * (alg.n() - 1) / 2;
    assert_eq!(rhat.len(), p * alg.dim(), "curvature coordinate length");
    Ok(InfinitesimalModel {
        alg: alg.clone(),
        eta,
        rhat,
        lambda,
        kappa: None,
    })
}

/// Builds the proportional-curvature model R = κ(η²) with η = λ·eta0; fails
/// when (η²) does not take values in the algebra.
pub fn ansatz_model(
    alg: &MetricRepresentation,
    eta0: &[Rational],
    lambda: &Rational,
    kappa: &Rational,
) -> Result<InfinitesimalModel, ModelError> {
    if !is_invariant_three_form(alg, eta0) {
        return Err(ModelError::EtaNotInvariant);
    }
    let eta: Vec<Rational> = eta0.iter().map(|x| x * lambda).collect();
    let q = eta_squared(alg, &eta);
    let n = alg.n();
    let p = n * (n - 1) / 2;
    let d = alg.dim();
    let flats: Vec<Vec<Rational>> = (0..d)
        .map(|a| alg.generator(a).flatten_row_major().to_vec())
        .collect();
    let solver = SpanSolver::new(&flats);
    let mut rhat = vec![Rational::zero(); p * d];
    for alpha in 0..p {
        let m = alg
            .matrix_from_so_coordinates(&q.full[alpha * p..(alpha + 1) * p])
            .scale(kappa);
        let coords = solver
            .coords(m.flatten_row_major())
            .ok_or(ModelError::AnsatzOutsideAlgebra)?;
        rhat[alpha * d..(alpha + 1) * d].clone_from_slice(&coords);
    }
    Ok(InfinitesimalModel {
        alg: alg.clone(),
        eta,
        rhat,
        lambda: lambda.clone(),
        kappa: Some(kappa.clone()),
    })
}

/// Structure constants of the bracket the model induces on 𝔤⊕V: the algebra
/// keeps its bracket and acts on V, two space directions bracket to their
/// curvature value plus minus-the-torsion −T_X Y = 2 η_X Y.
#[derive(Debug, Clone)]
pub struct ModelBracket {
    pub algebra_dim: usize,
    pub space_dim: usize,
    /// table[a][b] = coefficients of [z_a, z_b] (algebra slots first).
    pub table: Vec<Vec<Vec<Rational>>>,
}

impl ModelBracket {
    pub fn total_dim(&self) -> usize {
        self.algebra_dim + self.space_dim
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let dim = self.total_dim();
        let mut out = vec![Rational::zero(); dim];
        for (a, cu) in u.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (b, cv) in v.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let s = cu * cv;
                for (o, t) in out.iter_mut().zip(&self.table[a][b]) {
                    if !t.is_zero() {
                        *o += &(&s * t);
                    }
                }
            }
        }
        out
    }

    /// The matrix of ad(z_a) in the product basis.
    pub fn ad(&self, a: usize) -> RationalMatrix {
        let dim = self.total_dim();
        RationalMatrix::from_fn(dim, dim, |i, b| self.table[a][b][i].clone())
    }

    /// Trace form K(z_a, z_b) = tr(ad z_a · ad z_b) of the bracket.
    pub fn killing_form(&self) -> RationalMatrix {
        let dim = self.total_dim();
        let ads: Vec<RationalMatrix> = (0..dim).map(|a| self.ad(a)).collect();
        RationalMatrix::from_fn(dim, dim, |a, b| ads[a].mul(&ads[b]).trace())
    }
}

/// Builds the model bracket on 𝔤⊕V.
pub fn build_bracket(model: &InfinitesimalModel) -> ModelBracket {
    let alg = &model.alg;
    let d = alg.dim();
    let n = alg.n();
    let dim = d + n;
    let comps = three_form_components(alg, &model.eta);
    let mut table = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    for a in 0..d {
        for b in 0..d {
            let c = alg.bracket_coeffs(a, b);
            table[a][b][..d].clone_from_slice(c);
        }
        for j in 0..n {
            let col = alg.generator(a).col_vec(j);
            for (k, x) in col.iter().enumerate() {
                table[a][d + j][d + k] = x.clone();
                table[d + j][a][d + k] = -x;
            }
        }
    }
    let two = Rational::from(2);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (alpha, sign) = if i < j {
                (pair_index(n, i, j), Rational::from(1))
            } else {
                (pair_index(n, j, i), Rational::from(-1))
            };
            for a in 0..d {
                table[d + i][d + j][a] = &sign * &model.rhat[alpha * d + a];
            }
            let torsion_free = comps[i].col_vec(j);
            for (k, x) in torsion_free.iter().enumerate() {
                table[d + i][d + j][d + k] = &two * x;
            }
        }
    }
    ModelBracket {
        algebra_dim: d,
        space_dim: n,
        table,
    }
}

/// The Jacobiator of a bracket over all basis triples, with the largest
/// absolute numerator as a coarse norm (zero exactly for a Lie algebra).
#[derive(Debug, Clone)]
pub struct JacobiDefect {
    /// One row per ordered triple a<b<c of basis indices.
    pub rows: Vec<Vec<Rational>>,
    pub norm: BigInt,
}

impl JacobiDefect {
    pub fn is_zero(&self) -> bool {
        self.norm.is_zero()
    }

    /// Flattened entries (triples in lexicographic order).
    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.rows.iter().flatten()
    }
}

pub fn jacobi_defect(bracket: &ModelBracket) -> JacobiDefect {
    let dim = bracket.total_dim();
    let mut rows = Vec::new();
    let mut norm = BigInt::zero();
    let unit = |a: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[a] = Rational::from(1);
        v
    };
    for &(a, b, c) in &triples(dim) {
        let (ua, ub, uc) = (unit(a), unit(b), unit(c));
        let mut j = bracket.bracket(&bracket.table[a][b].clone(), &uc);
        for (x, y) in j
            .iter_mut()
            .zip(bracket.bracket(&bracket.table[b][c].clone(), &ua))
        {
            *x += &y;
        }
        for (x, y) in j
            .iter_mut()
            .zip(bracket.bracket(&bracket.table[c][a].clone(), &ub))
        {
            *x += &y;
        }
        for x in &j {
            let m = x.numer().abs();
            if m > norm {
                norm = m;
            }
        }
        rows.push(j);
    }
    JacobiDefect { rows, norm }
}

/// Whether no nonzero algebra element acts as zero on the space block of the
/// bracket — the bracket represents the algebra faithfully on V.
pub fn effectiveness_check(bracket: &ModelBracket) -> bool {
    let d = bracket.algebra_dim;
    let n = bracket.space_dim;
    if d == 0 {
        return true;
    }
    let m = RationalMatrix::from_fn(n * n, d, |row, a| {
        let (k, j) = (row / n, row % n);
        bracket.table[a][d + j][d + k].clone()
    });
    elim::rank(&m) == d
}

/// Curvature, Ricci, and the Einstein verdict of a model geometry.
#[derive(Debug, Clone)]
pub struct ModelEinstein {
    pub ricci: RationalMatrix,
    pub scalar: Rational,
    pub einstein: bool,
    /// Squared norm of the three-form (half the double-sum contraction).
    pub eta_norm_squared: Rational,
    /// Exactness of scalar = 2(1+κ)·‖η‖², when the ansatz is present.
    pub identity_check: Option<bool>,
}

/// Evaluates the geometry of a model: the curvature operator of the metric
/// is the model curvature plus the quadratic torsion term, and its Ricci
/// contraction decides the Einstein property.
pub fn model_einstein(
    model: &InfinitesimalModel,
    check_identity: bool,
) -> Result<ModelEinstein, ModelError> {
    if check_identity && model.kappa.is_none() {
        return Err(ModelError::AnsatzMissing);
    }
    let alg = &model.alg;
    let n = alg.n();
    let p = n * (n - 1) / 2;
    let d = alg.dim();
    let q = eta_squared(alg, &model.eta);
    let mut rg = q.full;
    for alpha in 0..p {
        let m = alg.combination(&model.rhat[alpha * d..(alpha + 1) * d]);
        for (slot, x) in alg.so_coordinates(&m).into_iter().enumerate() {
            rg[alpha * p + slot] += &x;
        }
    }
    let ambient = ambient_rotation_algebra(alg);
    let ric = ricci(&ambient, &rg);
    let scalar = scalar_of_ricci(&ambient, &ric);
    let einstein = traceless_ricci(&ambient, &ric).is_zero();
    let nsq = eta_norm_squared(alg, &model.eta);
    let identity_check = model.kappa.as_ref().filter(|_| check_identity).map(|k| {
        let expected = &(&(&Rational::from(1) + k) * &nsq) * &Rational::from(2);
        scalar == expected
    });
    Ok(ModelEinstein {
        ricci: ric,
        scalar,
        einstein,
        eta_norm_squared: nsq,
        identity_check,
    })
}

/// Exact interpolation of a rational-valued function of one variable known
/// to be polynomial of degree < points.len().
fn lagrange(points: &[(Rational, Rational)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut li = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let denom = xi - xj;
                li = li.mul(&Poly::linear_root(xj)).scale(&denom.recip());
            }
        }
        acc = acc.add(&li);
    }
    acc
}

/// The Jacobi defect of the proportional-curvature family (η, R) =
/// (λ·eta0, κ(η²)) as exact bivariate polynomials in (λ, κ), one per defect
/// entry. The bracket table is polynomial of degree ≤ 3 in λ and ≤ 1 in κ;
/// entries are interpolated from a grid of exact evaluations and verified at
/// an extra off-grid point.
pub fn family_defect(
    alg: &MetricRepresentation,
    eta0: &[Rational],
) -> Result<Vec<Poly2>, ModelError> {
    let lambdas: Vec<Rational> = [0i64, 1, 2, 3].iter().map(|&x| Rational::from(x)).collect();
    let defect_at = |l: &Rational, k: &Rational| -> Result<Vec<Rational>, ModelError> {
        let model = ansatz_model(alg, eta0, l, k)?;
        Ok(jacobi_defect(&build_bracket(&model))
            .rows
            .into_iter()
            .flatten()
            .collect())
    };
    let zero = Rational::zero();
    let one = Rational::from(1);
    let base: Vec<Vec<Rational>> = lambdas
        .iter()
        .map(|l| defect_at(l, &zero))
        .collect::<Result<_, _>>()?;
    let lifted: Vec<Vec<Rational>> = lambdas
        .iter()
        .map(|l| defect_at(l, &one))
        .collect::<Result<_, _>>()?;
    let entries = base[0].len();
    let mut polys = Vec::with_capacity(entries);
    for e in 0..entries {
        let p0 = lagrange(
            &lambdas
                .iter()
                .enumerate()
                .map(|(r, l)| (l.clone(), base[r][e].clone()))
                .collect::<Vec<_>>(),
        );
        let p1 = lagrange(
            &lambdas
                .iter()
                .enumerate()
                .map(|(r, l)| (l.clone(), &lifted[r][e] - &base[r][e]))
                .collect::<Vec<_>>(),
        );
        let mut p = Poly2::zero();
        for (i, c) in p0.coeffs().iter().enumerate() {
            p.add_term(i as u32, 0, c.clone());
        }
        for (i, c) in p1.coeffs().iter().enumerate() {
            p.add_term(i as u32, 1, c.clone());
        }
        polys.push(p);
    }
    // Off-grid verification of the degree bounds.
    let (lv, kv) = (Rational::from(5), Rational::from(2));
    let direct = defect_at(&lv, &kv)?;
    for (p, want) in polys.iter().zip(&direct) {
        assert_eq!(
            &p.eval(&lv, &kv),
            want,
            "interpolated family defect must match a direct evaluation"
        );
    }
    Ok(polys)
}

/// Solutions of the family's Jacobi condition in the (λ, κ) plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySolutions {
    /// The defect vanishes identically: every parameter pair closes the
    /// bracket into a Lie algebra.
    AllPairs { representative: (Rational, Rational) },
    /// Isolated rational solutions, possibly none. `dropped_irrational`
    /// records that candidate values outside ℚ were seen and discarded.
    Pairs {
        pairs: Vec<(Rational, Rational)>,
        dropped_irrational: bool,
    },
}

/// Solves the Jacobi condition of the proportional-curvature family exactly.
pub fn solve_family(
    alg: &MetricRepresentation,
    eta0: &[Rational],
) -> Result<FamilySolutions, ModelError> {
    let polys = family_defect(alg, eta0)?;
    let nonzero: Vec<&Poly2> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(FamilySolutions::AllPairs {
            representative: (Rational::from(1), Rational::from(1)),
        });
    }
    let zero = Rational::zero();
    let one = Rational::from(1);
    // Split each entry as p0(λ) + κ·p1(λ); the interpolation is κ-linear by
    // construction.
    let split: Vec<(Poly, Poly)> = nonzero
        .iter()
        .map(|p| {
            let p0 = p.eval_second(&zero);
            let p1 = p.eval_second(&one).sub(&p0);
            (p0, p1)
        })
        .collect();
    let mut univariate: Vec<Poly> = Vec::new();
    for (p0, p1) in &split {
        if p1.is_zero() {
            univariate.push(p0.clone());
        }
    }
    let linear: Vec<&(Poly, Poly)> = split.iter().filter(|(_, p1)| !p1.is_zero()).collect();
    for (i, (pi0, pi1)) in linear.iter().enumerate() {
        for (pj0, pj1) in linear.iter().skip(i + 1) {
            let res = pi0.mul(pj1).sub(&pj0.mul(pi1));
            if !res.is_zero() {
                univariate.push(res);
            }
        }
    }
    if univariate.is_empty() {
        // A single κ-linear constraint cuts out a curve, not points.
        return Err(ModelError::Underdetermined);
    }
    let mut gcd = Poly::zero();
    for p in &univariate {
        gcd = if gcd.is_zero() { p.clone() } else { gcd.gcd(p) };
    }
    if gcd.is_constant() {
        return Ok(FamilySolutions::Pairs {
            pairs: Vec::new(),
            dropped_irrational: false,
        });
    }
    let squarefree = gcd.squarefree_part();
    let (roots, complete) = squarefree.rational_roots();
    let rational_count: usize = roots.len();
    let dropped_irrational = !complete
        || rational_count < squarefree.degree().unwrap_or(0)
            && squarefree.count_real_roots() > rational_count;
    let mut pairs_out = Vec::new();
    for (l, _) in roots {
        // Pin κ from the first linear entry alive at this λ.
        let pin = linear
            .iter()
            .find(|(_, p1)| !p1.eval(&l).is_zero())
            .map(|(p0, p1)| -(&p0.eval(&l) / &p1.eval(&l)));
        let Some(k) = pin else {
            // κ stays free along this λ: not an isolated point.
            return Err(ModelError::Underdetermined);
        };
        let all_vanish = nonzero.iter().all(|p| p.eval(&l, &k).is_zero());
        if all_vanish {
            pairs_out.push((l, k));
        }
    }
    Ok(FamilySolutions::Pairs {
        pairs: pairs_out,
        dropped_irrational,
    })
}

/// Signature (positive, negative, zero) of a symmetric rational matrix by
/// congruence diagonalization.
pub fn symmetric_signature(m: &RationalMatrix) -> (usize, usize, usize) {
    assert!(m.is_square(), "signature of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        // Prefer a nonzero diagonal pivot; otherwise manufacture one from a
        // nonzero off-diagonal pair (which contributes one plus and one
        // minus after polarization).
        let pivot = live.iter().copied().find(|&i| !a[i][i].is_zero());
        match pivot {
            None => {
                let pair = live
                    .iter()
                    .copied()
                    .flat_map(|i| live.iter().copied().map(move |j| (i, j)))
                    .find(|&(i, j)| i < j && !a[i][j].is_zero());
                match pair {
                    None => {
                        zero += live.len();
                        break;
                    }
                    Some((i, j)) => {
                        // Replace row/col i by i+j to expose a diagonal entry.
                        for k in 0..n {
                            let x = a[j][k].clone();
                            a[i][k] += &x;
                        }
                        for k in 0..n {
                            let x = a[k][j].clone();
                            a[k][i] += &x;
                        }
                    }
                }
            }
            Some(piv) => {
                let d = a[piv][piv].clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                live.retain(|&i| i != piv);
                for &i in &live {
                    if a[i][piv].is_zero() {
                        continue;
                    }
                    let f = &a[i][piv] / &d;
                    for k in 0..n {
                        let x = &f * &a[piv][k];
                        a[i][k] -= &x;
                    }
                    for k in 0..n {
                        let x = &f * &a[k][piv];
                        a[k][i] -= &x;
                    }
                }
            }
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn rational(n: i64) -> Rational {
        Rational::from(n)
    }

    fn ratio(n: i64, d: i64) -> Rational {
        &rational(n) / &rational(d)
    }

    fn single_invariant(alg: &MetricRepresentation) -> Vec<Rational> {
        let forms = invariant_three_forms(alg);
        assert_eq!(forms.dim(), 1, "{} should fix a unique three-form line", alg.name());
        forms.basis()[0].clone()
    }

    #[test]
    fn zero_form_has_zero_quadratic_torsion() {
        let alg = catalog::so_n(4);
        let eta = vec![Rational::zero(); 4];
        let q = eta_squared(&alg, &eta);
        assert!(q.full.iter().all(Rational::is_zero));
        assert!(q.algebraic.iter().all(Rational::is_zero));
        assert!(q.coboundary.iter().all(Rational::is_zero));
    }

    #[test]
    fn exceptional_three_form_has_nonzero_coboundary_piece() {
        let alg = catalog::g2();
        let eta = single_invariant(&alg);
        let q = eta_squared(&alg, &eta);
        assert!(q.coboundary.iter().any(|x| !x.is_zero()));
        assert!(q.full.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn decomposition_holds_for_all_catalog_invariant_forms() {
        for alg in [catalog::g2(), catalog::su_n(3)] {
            let forms = invariant_three_forms(&alg);
            for eta in forms.basis() {
                // The decomposition identity is asserted inside.
                let _ = eta_squared(&alg, eta);
            }
        }
    }

    #[test]
    fn curvature_equation_for_the_exceptional_form() {
        let alg = catalog::g2();
        let eta = single_invariant(&alg);
        let sol = solve_rhat(&alg, &eta).unwrap();
        assert_eq!(sol.kernel.dim(), 77);
        let model =
            model_from_parts(&alg, eta, sol.particular, rational(1)).unwrap();
        let report = model_einstein(&model, false).unwrap();
        assert!(report.einstein, "the candidate geometry should be Einstein");
        assert!(report.scalar.is_positive());
    }

    #[test]
    fn bracket_family_of_the_three_sphere_module() {
        let alg = catalog::adjoint_of(&catalog::su_n(2)).unwrap();
        let eta0 = single_invariant(&alg);
        let solutions = solve_family(&alg, &eta0).unwrap();
        let FamilySolutions::AllPairs { representative } = solutions else {
            panic!("the proportional family should close for every parameter pair");
        };
        let (l, k) = representative;
        let model = ansatz_model(&alg, &eta0, &l, &k).unwrap();
        let bracket = build_bracket(&model);
        assert_eq!(bracket.total_dim(), 6);
        assert!(jacobi_defect(&bracket).is_zero());
        assert!(effectiveness_check(&bracket));
        let report = model_einstein(&model, true).unwrap();
        assert!(report.einstein);
        assert_eq!(report.identity_check, Some(true));
    }

    #[test]
    fn scalar_identity_across_sampled_parameters() {
        let alg = catalog::adjoint_of(&catalog::su_n(2)).unwrap();
        let eta0 = single_invariant(&alg);
        let samples = [
            (rational(1), rational(1)),
            (rational(2), rational(-1)),
            (ratio(1, 2), ratio(3, 4)),
            (rational(-3), ratio(-2, 5)),
            (ratio(7, 3), rational(4)),
        ];
        for (l, k) in samples {
            let model = ansatz_model(&alg, &eta0, &l, &k).unwrap();
            let report = model_einstein(&model, true).unwrap();
            assert_eq!(
                report.identity_check,
                Some(true),
                "scalar identity at λ={l:?}, κ={k:?}"
            );
            assert!(report.einstein);
        }
    }

    #[test]
    fn corrupted_bracket_fails_effectiveness() {
        let alg = catalog::adjoint_of(&catalog::su_n(2)).unwrap();
        let eta0 = single_invariant(&alg);
        let model = ansatz_model(&alg, &eta0, &rational(1), &rational(1)).unwrap();
        let mut bracket = build_bracket(&model);
        let d = bracket.algebra_dim;
        let dim = bracket.total_dim();
        // Silence one algebra generator on the space block.
        for b in d..dim {
            for x in bracket.table[0][b].iter_mut() {
                *x = Rational::zero();
            }
            for x in bracket.table[b][0].iter_mut() {
                *x = Rational::zero();
            }
        }
        assert!(!effectiveness_check(&bracket));
    }

    #[test]
    fn killing_forms_across_the_family() {
        let alg = catalog::adjoint_of(&catalog::su_n(2)).unwrap();
        let eta0 = single_invariant(&alg);
        // The curvature-dominated member is a compact form: the Killing form
        // is negative definite.
        let compact = ansatz_model(&alg, &eta0, &rational(1), &rational(0)).unwrap();
        let k = build_bracket(&compact).killing_form();
        assert_eq!(k, k.transpose());
        assert_eq!(symmetric_signature(&k), (0, 6, 0));
        // Balancing torsion and curvature contracts the bracket: the Killing
        // form degenerates on a three-dimensional radical.
        let balanced = ansatz_model(&alg, &eta0, &rational(1), &rational(1)).unwrap();
        let k = build_bracket(&balanced).killing_form();
        assert_eq!(symmetric_signature(&k), (0, 3, 3));
    }

    #[test]
    fn perturbed_curvature_breaks_the_jacobi_identity() {
        let alg = catalog::adjoint_of(&catalog::su_n(2)).unwrap();
        let eta0 = single_invariant(&alg);
        let model = ansatz_model(&alg, &eta0, &rational(1), &rational(1)).unwrap();
        let mut perturbed = model.clone();
        perturbed.rhat[0] += &rational(1);
        perturbed.kappa = None;
        let defect = jacobi_defect(&build_bracket(&perturbed));
        assert!(!defect.is_zero());
    }

    #[test]
    fn non_invariant_form_is_rejected() {
        let alg = catalog::su_n(3);
        let mut eta = vec![Rational::zero(); triples(6).len()];
        eta[0] = rational(1);
        let err = model_from_parts(&alg, eta, vec![Rational::zero(); 15 * 8], rational(1))
            .map(|_| ())
            .unwrap_err();
        assert_eq!(err, ModelError::EtaNotInvariant);
    }

    #[test]
    fn signature_of_a_mixed_diagonal() {
        let m = RationalMatrix::diagonal(&[
            rational(2),
            rational(-3),
            Rational::zero(),
            ratio(1, 5),
        ]);
        assert_eq!(symmetric_signature(&m), (2, 1, 1));
        // A hyperbolic plane: zero diagonal, off-diagonal coupling.
        let mut h = RationalMatrix::zeros(2, 2);
        h.set(0, 1, rational(1));
        h.set(1, 0, rational(1));
        assert_eq!(symmetric_signature(&h), (1, 1, 0));
    }
}
