//! Metric representations: Lie algebras given as skew matrices on a Euclidean
//! space, with validated structure constants, trace form, orthogonal
//! complement inside so(V), and the adjoint representation.
//!
//! The inner product on V is a positive diagonal matrix carried by the
//! representation (the identity for every standard construction). A general
//! diagonal metric is required because some adjoint representations admit no
//! rational basis that is skew in the standard sense, yet are rationally skew
//! with respect to a diagonal form.

use crate::exactlin::elim::{rank, SpanSolver};
use crate::exactlin::matrix::RationalMatrix;
use crate::exactlin::rational::Rational;
use crate::exactlin::subspace::Subspace;
use crate::indexing::pairs;

/// Validation and construction failures for metric representations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieAlgError {
    #[error("generator {index} is not skew with respect to the metric")]
    NotSkew { index: usize },
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("bracket of generators {a} and {b} leaves the span")]
    NotClosed { a: usize, b: usize },
    #[error("generator matrices must all be square of equal size")]
    ShapeMismatch,
    #[error("metric must be a positive diagonal of length n")]
    BadMetric,
    #[error("representation acts trivially on part of the algebra (zero center under ad)")]
    Unfaithful,
}

/// A Lie algebra 𝔤 presented by a basis of matrices on V = ℝⁿ, each skew with
/// respect to a fixed positive diagonal inner product, together with exact
/// structure constants.
#[derive(Debug, Clone)]
pub struct MetricRepresentation {
    name: String,
    n: usize,
    metric: Vec<Rational>,
    generators: Vec<RationalMatrix>,
    /// structure[a][b] holds the coefficients of [x_a, x_b] in the generators.
    structure: Vec<Vec<Vec<Rational>>>,
    /// Trace-form Gram matrix G_ab = -tr(x_a x_b), fixed at construction.
    trace_form: RationalMatrix,
    /// Generator index ranges of the direct summands of 𝔤 (the whole algebra
    /// when built directly). Used to separate modules summand by summand.
    summands: Vec<(usize, usize)>,
}

impl MetricRepresentation {
    /// Validates generators over the standard inner product.
    pub fn from_generators(
        name: impl Into<String>,
        mats: Vec<RationalMatrix>,
    ) -> Result<Self, LieAlgError> {
        let n = mats.first().map_or(0, RationalMatrix::rows);
        Self::from_generators_with_metric(name, mats, vec![Rational::one(); n])
    }

    /// Validates generators skew with respect to diag(metric).
    pub fn from_generators_with_metric(
        name: impl Into<String>,
        mats: Vec<RationalMatrix>,
        metric: Vec<Rational>,
    ) -> Result<Self, LieAlgError> {
        let n = if mats.is_empty() {
            metric.len()
        } else {
            mats[0].rows()
        };
        if metric.len() != n || metric.iter().any(|g| !g.is_positive()) {
            return Err(LieAlgError::BadMetric);
        }
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(LieAlgError::ShapeMismatch);
            }
        }
        // Skewness with respect to the metric: x^T D + D x = 0, entrywise
        // g_i x_ij + g_j x_ji = 0 (for the identity metric, plain skewness).
        for (index, x) in mats.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let lhs = &metric[i] * x.at(i, j) + &metric[j] * x.at(j, i);
                    if !lhs.is_zero() {
                        return Err(LieAlgError::NotSkew { index });
                    }
                }
            }
        }
        let d = mats.len();
        let flat: Vec<Vec<Rational>> = mats
            .iter()
            .map(|m| m.flatten_row_major().to_vec())
            .collect();
        if d > 0 {
            let stacked = RationalMatrix::from_rows(flat.clone());
            if rank(&stacked) < d {
                return Err(LieAlgError::Dependent);
            }
        }
        let solver = if d > 0 { Some(SpanSolver::new(&flat)) } else { None };
        let mut structure = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                if a == b {
                    structure[a][b] = vec![Rational::zero(); d];
                    continue;
                }
                if b < a {
                    structure[a][b] = structure[b][a].iter().map(|c| -c).collect();
                    continue;
                }
                let bracket = mats[a].commutator(&mats[b]);
                let coords = solver
                    .as_ref()
                    .unwrap()
                    .coords(&bracket.flatten_row_major())
                    .ok_or(LieAlgError::NotClosed { a, b })?;
                structure[a][b] = coords;
            }
        }
        let trace_form = RationalMatrix::from_fn(d, d, |a, b| -mats[a].mul(&mats[b]).trace());
        Ok(MetricRepresentation {
            name: name.into(),
            n,
            metric,
            generators: mats,
            structure,
            trace_form,
            summands: vec![(0, d)],
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Dimension of V.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of 𝔤.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Diagonal entries of the inner product on V.
    pub fn metric(&self) -> &[Rational] {
        &self.metric
    }

    pub fn has_standard_metric(&self) -> bool {
        self.metric.iter().all(Rational::is_one)
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &RationalMatrix {
        &self.generators[a]
    }

    /// Coefficients of [x_a, x_b] in the generator basis.
    pub fn bracket_coeffs(&self, a: usize, b: usize) -> &[Rational] {
        &self.structure[a][b]
    }

    /// G_ab = -tr(x_a x_b); symmetric positive definite.
    pub fn trace_form(&self) -> &RationalMatrix {
        &self.trace_form
    }

    /// Direct-summand generator ranges (one range = the whole algebra unless
    /// the representation was assembled as a direct sum).
    pub fn summands(&self) -> &[(usize, usize)] {
        &self.summands
    }

    pub(crate) fn set_summands(&mut self, summands: Vec<(usize, usize)>) {
        debug_assert!(summands.iter().all(|&(s, e)| s <= e && e <= self.dim()));
        self.summands = summands;
    }

    /// The matrix sum c_a x_a for a coefficient vector.
    pub fn combination(&self, coeffs: &[Rational]) -> RationalMatrix {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (c, x) in coeffs.iter().zip(&self.generators) {
            if !c.is_zero() {
                out.add_scaled(c, x);
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure
            .iter()
            .all(|row| row.iter().all(|c| c.iter().all(Rational::is_zero)))
    }

    /// Coordinates of a metric-skew matrix in the canonical basis of so(V):
    /// the basis element for the pair (i, j), i < j, is the map
    /// v ↦ ⟨e_i, v⟩e_j − ⟨e_j, v⟩e_i, whose matrix has g_i at (j, i) and
    /// −g_j at (i, j).
    pub fn so_coordinates(&self, m: &RationalMatrix) -> Vec<Rational> {
        assert_eq!(m.rows(), self.n);
        pairs(self.n)
            .iter()
            .map(|&(i, j)| m.at(j, i) / &self.metric[i])
            .collect()
    }

    /// Inverse of `so_coordinates`.
    pub fn matrix_from_so_coordinates(&self, coords: &[Rational]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for (&(i, j), c) in pairs(self.n).iter().zip(coords) {
            if !c.is_zero() {
                m.set(j, i, c * &self.metric[i]);
                m.set(i, j, -&(c * &self.metric[j]));
            }
        }
        m
    }

    /// Gram matrix of the pairing ⟨A,B⟩ = −½tr(AB) on the canonical so(V)
    /// basis: diagonal with entries g_i·g_j.
    pub fn so_gram(&self) -> RationalMatrix {
        let diag: Vec<Rational> = pairs(self.n)
            .iter()
            .map(|&(i, j)| &self.metric[i] * &self.metric[j])
            .collect();
        RationalMatrix::diagonal(&diag)
    }

    /// The span of 𝔤 inside so(V) coordinates.
    pub fn span_in_so(&self) -> Subspace {
        let vectors = self
            .generators
            .iter()
            .map(|x| self.so_coordinates(x))
            .collect();
        Subspace::from_spanning(vectors, self.n * (self.n - 1) / 2)
    }

    /// Orthogonal complement 𝔤^⊥ inside so(V) with respect to −½tr(AB),
    /// in canonical so(V) coordinates. dim = n(n−1)/2 − dim 𝔤.
    pub fn orthocomplement_in_so(&self) -> Subspace {
        self.span_in_so().orthogonal_complement(&self.so_gram())
    }

    /// The adjoint representation: 𝔤 acting on itself, expressed in a
    /// trace-form-orthogonal basis so the images are skew with respect to an
    /// explicit positive diagonal metric (the identity whenever a global
    /// rational rescaling reaches it).
    pub fn adjoint_rep(&self) -> Result<MetricRepresentation, LieAlgError> {
        let d = self.dim();
        if d == 0 {
            return Err(LieAlgError::Unfaithful);
        }
        // Gram–Schmidt on the trace form, over ℚ; primitive integer rescale of
        // each vector to keep entries small.
        let g = &self.trace_form;
        let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(d);
        let mut norms: Vec<Rational> = Vec::with_capacity(d);
        let pair = |u: &[Rational], v: &[Rational]| -> Rational {
            let gv = g.mul_vec(v);
            u.iter()
                .zip(&gv)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, t| acc + t)
        };
        for a in 0..d {
            let mut v: Vec<Rational> = (0..d)
                .map(|i| {
                    if i == a {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            for (b, prev) in basis.iter().enumerate() {
                let c = &pair(prev, &v) / &norms[b];
                if !c.is_zero() {
                    for (vi, p) in v.iter_mut().zip(prev) {
                        *vi -= &(&c * p);
                    }
                }
            }
            primitivize(&mut v);
            let nv = pair(&v, &v);
            debug_assert!(nv.is_positive(), "trace form must be positive definite");
            norms.push(nv);
            basis.push(v);
        }
        // Canonical metric: strip the square part of each norm (a rescale of
        // that basis vector) and the common factor of all norms (any positive
        // multiple of an invariant inner product serves equally). For a
        // simple algebra whose trace form is already rational-diagonalizable
        // to a multiple of a square, this lands on the identity metric.
        let (scales, canonical) = normalize_diagonal_metric(&norms);
        for (v, s) in basis.iter_mut().zip(&scales) {
            if !s.is_one() {
                for vi in v.iter_mut() {
                    *vi = &*vi / s;
                }
            }
        }
        norms = canonical;
        // Matrices of ad(y_a) in the new basis: column b holds the coordinates
        // of [y_a, y_b]. Brackets are computed on coefficient vectors through
        // the structure constants, then converted to the orthogonal basis.
        let solver = SpanSolver::new(&basis);
        let mut ad_mats = Vec::with_capacity(d);
        for ya in &basis {
            let mut ad = RationalMatrix::zeros(d, d);
            for (b, yb) in basis.iter().enumerate() {
                let bracket = bracket_coeff_vectors(self, ya, yb);
                let coords = solver
                    .coords(&bracket)
                    .expect("bracket stays inside the algebra");
                for (i, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        ad.set(i, b, c.clone());
                    }
                }
            }
            ad_mats.push(ad);
        }
        if ad_mats.iter().any(RationalMatrix::is_zero) {
            return Err(LieAlgError::Unfaithful);
        }
        match MetricRepresentation::from_generators_with_metric(
            format!("adjoint:{}", self.name),
            ad_mats,
            norms,
        ) {
            Ok(rep) => Ok(rep),
            // Dependent images of independent elements mean ad has a kernel,
            // i.e. a nontrivial center.
            Err(LieAlgError::Dependent) => Err(LieAlgError::Unfaithful),
            Err(e) => Err(e),
        }
    }

    /// Coordinates of a matrix in the generator basis; panics when outside.
    pub fn coords_in_generators(&self, m: &RationalMatrix) -> Vec<Rational> {
        let flat: Vec<Vec<Rational>> = self
            .generators
            .iter()
            .map(|x| x.flatten_row_major().to_vec())
            .collect();
        SpanSolver::new(&flat)
            .coords(m.flatten_row_major())
            .expect("matrix lies outside the algebra")
    }
}

/// Scales a rational vector to a primitive integer vector (gcd of numerators
/// one, common denominator cleared), preserving its line.
fn primitivize(v: &mut [Rational]) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut lcm = BigInt::one();
    for x in v.iter() {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut gcd = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            let scaled = x.numer() * (&lcm / x.denom());
            gcd = gcd.gcd(&scaled.abs());
        }
    }
    if gcd.is_zero() {
        return;
    }
    let factor = Rational::from_ratio(lcm, gcd);
    for x in v.iter_mut() {
        *x = &*x * &factor;
    }
}

/// Writes each positive entry as core·s² with core a squarefree positive
/// integer, divides the cores by their overall gcd, and returns
/// (per-entry scales s, reduced cores as the canonical diagonal metric).
fn normalize_diagonal_metric(norms: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;
    let square_part = |q: &Rational| -> (BigInt, Rational) {
        // q = (n_sf·n_r²)/(d_sf·d_r²) = core·s² with core = n_sf·d_sf (an
        // integer) and s = n_r/(d_r·d_sf).
        let (n_sf, n_r) = crate::exactlin::quadext::squarefree_decompose(q.numer());
        let (d_sf, d_r) = crate::exactlin::quadext::squarefree_decompose(q.denom());
        let core = &n_sf * &d_sf;
        let scale = Rational::from_ratio(n_r, d_r * d_sf);
        (core, scale)
    };
    let mut scales = Vec::with_capacity(norms.len());
    let mut cores = Vec::with_capacity(norms.len());
    let mut common = BigInt::zero();
    for q in norms {
        let (core, scale) = square_part(q);
        common = common.gcd(&core);
        scales.push(scale);
        cores.push(core);
    }
    let metric = cores
        .into_iter()
        .map(|c| Rational::from_bigint(c / &common))
        .collect();
    (scales, metric)
}

/// A subalgebra of a metric representation, stored as a subspace of
/// coefficient vectors in the parent's generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraHandle {
    basis: Subspace,
}

impl SubalgebraHandle {
    /// Wraps a coefficient-space subspace after verifying bracket closure.
    pub fn new(parent: &MetricRepresentation, basis: Subspace) -> Self {
        assert_eq!(basis.ambient(), parent.dim());
        let handle = SubalgebraHandle { basis };
        assert!(
            handle.is_bracket_closed(parent),
            "subalgebra candidate is not closed under the bracket"
        );
        handle
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn is_bracket_closed(&self, parent: &MetricRepresentation) -> bool {
        let vs = self.basis.basis();
        for (i, u) in vs.iter().enumerate() {
            for v in vs.iter().skip(i + 1) {
                let bracket = bracket_coeff_vectors(parent, u, v);
                if !self.basis.contains(&bracket) {
                    return false;
                }
            }
        }
        true
    }

    /// The subalgebra as matrices on the parent's V.
    pub fn matrices(&self, parent: &MetricRepresentation) -> Vec<RationalMatrix> {
        self.basis
            .basis()
            .iter()
            .map(|v| parent.combination(v))
            .collect()
    }
}

/// Bracket of two coefficient vectors via the structure constants.
pub fn bracket_coeff_vectors(
    rep: &MetricRepresentation,
    u: &[Rational],
    v: &[Rational],
) -> Vec<Rational> {
    let d = rep.dim();
    let mut out = vec![Rational::zero(); d];
    for (a, ua) in u.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            let f = ua * vb;
            for (k, c) in rep.bracket_coeffs(a, b).iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &(&f * c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    /// Standard so(3) basis: rotation generators around the three axes.
    fn so3() -> Vec<RationalMatrix> {
        let a23 = RationalMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let a31 = RationalMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]);
        let a12 = RationalMatrix::from_i64_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        vec![a23, a31, a12]
    }

    #[test]
    fn so3_structure_constants_are_levi_civita() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        assert_eq!(rep.dim(), 3);
        // [L1, L2] = L3 and cyclic.
        assert_eq!(rep.bracket_coeffs(0, 1), &[q(0), q(0), q(1)]);
        assert_eq!(rep.bracket_coeffs(1, 2), &[q(1), q(0), q(0)]);
        assert_eq!(rep.bracket_coeffs(2, 0), &[q(0), q(1), q(0)]);
        assert_eq!(rep.bracket_coeffs(1, 0), &[q(0), q(0), q(-1)]);
        assert!(!rep.is_abelian());
    }

    #[test]
    fn trace_form_of_so3_is_twice_identity() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        assert_eq!(rep.trace_form(), &RationalMatrix::diagonal(&[q(2), q(2), q(2)]));
    }

    #[test]
    fn non_skew_generator_is_rejected() {
        let sym = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let err = MetricRepresentation::from_generators("bad", vec![sym]).unwrap_err();
        assert_eq!(err, LieAlgError::NotSkew { index: 0 });
    }

    #[test]
    fn non_closed_pair_is_rejected() {
        // Two rotation planes in so(3) without the third: not closed.
        let mats = vec![so3()[1].clone(), so3()[2].clone()];
        let err = MetricRepresentation::from_generators("bad", mats).unwrap_err();
        assert_eq!(err, LieAlgError::NotClosed { a: 0, b: 1 });
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let a = so3()[0].clone();
        let b = a.scale(&q(2));
        let err = MetricRepresentation::from_generators("bad", vec![a, b]).unwrap_err();
        assert_eq!(err, LieAlgError::Dependent);
    }

    #[test]
    fn orthocomplement_dimensions() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        // so(3) is all of so(3): complement zero.
        assert_eq!(rep.orthocomplement_in_so().dim(), 0);
        // A single rotation plane inside so(3): complement has dimension 2.
        let one = MetricRepresentation::from_generators("so2x", vec![so3()[2].clone()]).unwrap();
        assert_eq!(one.orthocomplement_in_so().dim(), 2);
    }

    #[test]
    fn so_coordinate_round_trip() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        for x in rep.generators() {
            let coords = rep.so_coordinates(x);
            assert_eq!(&rep.matrix_from_so_coordinates(&coords), x);
        }
        // The canonical basis is orthonormal for the identity metric.
        assert_eq!(rep.so_gram(), RationalMatrix::identity(3));
    }

    #[test]
    fn adjoint_of_so3_is_so3_again() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        let ad = rep.adjoint_rep().unwrap();
        assert_eq!(ad.dim(), 3);
        assert_eq!(ad.n(), 3);
        assert!(ad.has_standard_metric());
        // ad must reproduce the same structure constants up to basis scaling;
        // here the trace-form basis is a rescale of the original one.
        assert_eq!(ad.bracket_coeffs(0, 1)[2].abs(), q(1));
    }

    #[test]
    fn abelian_algebra_has_no_adjoint_rep() {
        let j = RationalMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let rep = MetricRepresentation::from_generators("so2", vec![j]).unwrap();
        assert!(rep.is_abelian());
        assert_eq!(rep.adjoint_rep().unwrap_err(), LieAlgError::Unfaithful);
    }

    #[test]
    fn weighted_metric_accepts_weighted_skew_generator() {
        // With metric diag(1, 4): x must satisfy g_i x_ij = -g_j x_ji.
        let x = RationalMatrix::from_i64_rows(&[&[0, -4], &[1, 0]]);
        let rep = MetricRepresentation::from_generators_with_metric(
            "weighted",
            vec![x],
            vec![q(1), q(4)],
        )
        .unwrap();
        assert_eq!(rep.dim(), 1);
        // The same matrix fails under the identity metric.
        let err = MetricRepresentation::from_generators("plain", vec![rep.generator(0).clone()])
            .unwrap_err();
        assert_eq!(err, LieAlgError::NotSkew { index: 0 });
    }

    #[test]
    fn subalgebra_closure_check() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        let full = SubalgebraHandle::new(&rep, Subspace::full(3));
        assert_eq!(full.dim(), 3);
        let line = SubalgebraHandle::new(
            &rep,
            Subspace::from_spanning(vec![vec![q(1), q(0), q(0)]], 3),
        );
        assert!(line.is_bracket_closed(&rep));
        // A plane spanned by two rotation axes is not closed.
        let plane = Subspace::from_spanning(vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]], 3);
        let plane_handle = SubalgebraHandle { basis: plane };
        assert!(!plane_handle.is_bracket_closed(&rep));
    }

    #[test]
    fn jacobi_holds_on_structure_constants() {
        let rep = MetricRepresentation::from_generators("so3", so3()).unwrap();
        let d = rep.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 in coefficients.
                    let mut total = vec![Rational::zero(); d];
                    let terms = [(a, b, c), (b, c, a), (c, a, b)];
                    for (x, y, z) in terms {
                        let inner = rep.bracket_coeffs(x, y).to_vec();
                        let mut zvec = vec![Rational::zero(); d];
                        zvec[z] = Rational::one();
                        let outer = bracket_coeff_vectors(&rep, &inner, &zvec);
                        for (t, o) in total.iter_mut().zip(&outer) {
                            *t += o;
                        }
                    }
                    assert!(total.iter().all(Rational::is_zero));
                }
            }
        }
    }
}
