//! Named constructions of the classical metric representations — rotation,
//! unitary, special unitary, and quaternionic families, the two exceptional
//! stabilizer algebras, adjoint representations — plus direct-sum and
//! diagonal-copy combinators, key parsing for the CLI, and the expectation
//! table the acceptance suite checks computed values against.

use std::fmt;

use crate::decompose::stabilizer;
use crate::exactlin::matrix::RationalMatrix;
use crate::exactlin::rational::Rational;
use crate::indexing::{combinations, triples};
use crate::liealg::{LieAlgError, MetricRepresentation};
use crate::tensorops::induce;
use crate::Shape;

#[derive(Debug)]
pub enum CatalogError {
    UnknownKey(String),
    BadParams(String),
    Build(LieAlgError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownKey(k) => write!(f, "unknown catalog key: {k}"),
            CatalogError::BadParams(m) => write!(f, "bad catalog parameters: {m}"),
            CatalogError::Build(e) => write!(f, "construction failed validation: {e}"),
        }
    }
}

impl std::error::Error for CatalogError {}

impl From<LieAlgError> for CatalogError {
    fn from(e: LieAlgError) -> Self {
        CatalogError::Build(e)
    }
}

fn q(x: i64) -> Rational {
    Rational::from_int(x)
}

/// so(n): rotation generators A_ij = E_ji − E_ij for i < j in pair order.
pub fn so_n(n: usize) -> MetricRepresentation {
    assert!(n >= 2, "rotation algebra needs n >= 2");
    let gens = crate::indexing::pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let mut m = RationalMatrix::zeros(n, n);
            m.set(j, i, q(1));
            m.set(i, j, q(-1));
            m
        })
        .collect();
    MetricRepresentation::from_generators(format!("so{n}"), gens)
        .expect("rotation generators validate")
}

/// Realifies a complex matrix given as (real, imaginary) parts into the
/// 2n-dimensional real representation with interleaved coordinates
/// (x₁, y₁, x₂, y₂, …): each entry a+bi becomes the 2×2 block [[a,−b],[b,a]].
fn realify_complex(re: &RationalMatrix, im: &RationalMatrix) -> RationalMatrix {
    let n = re.rows();
    RationalMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (i, ri) = (r / 2, r % 2);
        let (j, ci) = (c / 2, c % 2);
        match (ri, ci) {
            (0, 0) | (1, 1) => re.at(i, j).clone(),
            (0, 1) => -im.at(i, j),
            (1, 0) => im.at(i, j).clone(),
            _ => unreachable!(),
        }
    })
}

/// Complex skew-hermitian basis for u(n), realified. Order: for each pair
/// k < l the real-skew generator E_lk − E_kl, then the imaginary-symmetric
/// i(E_kl + E_lk); then the diagonal generators iE_kk.
fn unitary_generators(n: usize, traceless: bool) -> Vec<RationalMatrix> {
    let mut gens = Vec::new();
    for (k, l) in crate::indexing::pairs(n) {
        let mut re = RationalMatrix::zeros(n, n);
        re.set(l, k, q(1));
        re.set(k, l, q(-1));
        gens.push(realify_complex(&re, &RationalMatrix::zeros(n, n)));
        let mut im = RationalMatrix::zeros(n, n);
        im.set(k, l, q(1));
        im.set(l, k, q(1));
        gens.push(realify_complex(&RationalMatrix::zeros(n, n), &im));
    }
    if traceless {
        for k in 0..n - 1 {
            let mut im = RationalMatrix::zeros(n, n);
            im.set(k, k, q(1));
            im.set(k + 1, k + 1, q(-1));
            gens.push(realify_complex(&RationalMatrix::zeros(n, n), &im));
        }
    } else {
        for k in 0..n {
            let mut im = RationalMatrix::zeros(n, n);
            im.set(k, k, q(1));
            gens.push(realify_complex(&RationalMatrix::zeros(n, n), &im));
        }
    }
    gens
}

/// u(n) on ℝ²ⁿ.
pub fn u_n(n: usize) -> MetricRepresentation {
    assert!(n >= 1);
    MetricRepresentation::from_generators(format!("u{n}"), unitary_generators(n, false))
        .expect("unitary generators validate")
}

/// su(n) on ℝ²ⁿ.
pub fn su_n(n: usize) -> MetricRepresentation {
    assert!(n >= 2, "traceless unitary algebra needs n >= 2");
    MetricRepresentation::from_generators(format!("su{n}"), unitary_generators(n, true))
        .expect("special unitary generators validate")
}

/// Left multiplication by the quaternion a+bi+cj+dk on ℍ = ℝ⁴ in the basis
/// (1, i, j, k).
fn left_block(e: [i64; 4]) -> [[i64; 4]; 4] {
    let [a, b, c, d] = e;
    [
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ]
}

/// Right multiplication by the quaternion a+bi+cj+dk.
fn right_block(e: [i64; 4]) -> [[i64; 4]; 4] {
    let [a, b, c, d] = e;
    [
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ]
}

fn conj(e: [i64; 4]) -> [i64; 4] {
    [e[0], -e[1], -e[2], -e[3]]
}

fn neg(e: [i64; 4]) -> [i64; 4] {
    [-e[0], -e[1], -e[2], -e[3]]
}

/// Builds the 4n×4n real matrix of a quaternionic n×n matrix whose only
/// nonzero entries are the given (row, col, quaternion) triples, acting by
/// left multiplication.
fn quaternion_matrix(n: usize, entries: &[(usize, usize, [i64; 4])]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(4 * n, 4 * n);
    for &(r, c, e) in entries {
        let block = left_block(e);
        for (bi, row) in block.iter().enumerate() {
            for (bj, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(4 * r + bi, 4 * c + bj, q(x));
                }
            }
        }
    }
    m
}

const UNIT_1: [i64; 4] = [1, 0, 0, 0];
const UNIT_I: [i64; 4] = [0, 1, 0, 0];
const UNIT_J: [i64; 4] = [0, 0, 1, 0];
const UNIT_K: [i64; 4] = [0, 0, 0, 1];

/// Quaternionic skew-hermitian basis for sp(n): for each pair k < l, the four
/// generators uE_kl − ūE_lk with u in (1, i, j, k); then the diagonal
/// imaginary generators uE_kk with u in (i, j, k).
fn symplectic_generators(n: usize) -> Vec<RationalMatrix> {
    let mut gens = Vec::new();
    for (k, l) in crate::indexing::pairs(n) {
        for u in [UNIT_1, UNIT_I, UNIT_J, UNIT_K] {
            gens.push(quaternion_matrix(n, &[(k, l, u), (l, k, neg(conj(u)))]));
        }
    }
    for k in 0..n {
        for u in [UNIT_I, UNIT_J, UNIT_K] {
            gens.push(quaternion_matrix(n, &[(k, k, u)]));
        }
    }
    gens
}

/// sp(n) on ℝ⁴ⁿ.
pub fn sp_n(n: usize) -> MetricRepresentation {
    assert!(n >= 1);
    MetricRepresentation::from_generators(format!("sp{n}"), symplectic_generators(n))
        .expect("symplectic generators validate")
}

/// Right scalar multiplication by an imaginary unit on ℍⁿ = ℝ⁴ⁿ
/// (block-diagonal, one block per quaternionic coordinate).
fn right_scalar(n: usize, u: [i64; 4]) -> RationalMatrix {
    let block = right_block(u);
    let mut m = RationalMatrix::zeros(4 * n, 4 * n);
    for r in 0..n {
        for (bi, row) in block.iter().enumerate() {
            for (bj, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(4 * r + bi, 4 * r + bj, q(x));
                }
            }
        }
    }
    m
}

/// sp(n) ⊕ sp(1) on ℝ⁴ⁿ: left quaternionic matrices plus right scalar
/// multiplications by i, j, k.
pub fn sp_n_plus_sp1(n: usize) -> MetricRepresentation {
    assert!(n >= 1);
    let mut gens = symplectic_generators(n);
    let d_left = gens.len();
    for u in [UNIT_I, UNIT_J, UNIT_K] {
        gens.push(right_scalar(n, u));
    }
    let mut rep = MetricRepresentation::from_generators(format!("sp{n}+sp1"), gens)
        .expect("quaternion-pair generators validate");
    rep.set_summands(vec![(0, d_left), (d_left, d_left + 3)]);
    rep
}

/// sp(n) ⊕ u(1) on ℝ⁴ⁿ: left quaternionic matrices plus the right scalar
/// multiplication by i.
pub fn sp_n_plus_u1(n: usize) -> MetricRepresentation {
    assert!(n >= 1);
    let mut gens = symplectic_generators(n);
    let d_left = gens.len();
    gens.push(right_scalar(n, UNIT_I));
    let mut rep = MetricRepresentation::from_generators(format!("sp{n}+u1"), gens)
        .expect("quaternion-circle generators validate");
    rep.set_summands(vec![(0, d_left), (d_left, d_left + 1)]);
    rep
}

/// The associative 3-form on ℝ⁷ whose stabilizer is the exceptional
/// 14-dimensional algebra, as coefficients over the sorted triple basis.
pub fn associative_three_form() -> Vec<Rational> {
    let trips = triples(7);
    let mut v = vec![Rational::zero(); trips.len()];
    let terms: [(usize, usize, usize, i64); 7] = [
        (0, 1, 2, 1),
        (0, 3, 4, 1),
        (0, 5, 6, 1),
        (1, 3, 5, 1),
        (1, 4, 6, -1),
        (2, 3, 6, -1),
        (2, 4, 5, -1),
    ];
    for (i, j, k, c) in terms {
        v[crate::indexing::triple_index(7, i, j, k)] = q(c);
    }
    v
}

/// The exceptional algebra of dimension 14 acting on ℝ⁷, built as the
/// stabilizer of the associative 3-form inside so(7).
pub fn g2() -> MetricRepresentation {
    let so7 = so_n(7);
    let l3 = induce(&so7, &Shape::Lambda3);
    let handle = stabilizer(&so7, &l3, &associative_three_form());
    let rep = MetricRepresentation::from_generators("g2", handle.matrices(&so7))
        .expect("stabilizer generators validate");
    assert_eq!(rep.dim(), 14, "associative-form stabilizer has dimension 14");
    rep
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Cayley 4-form on ℝ⁸: the associative form wedged with the last
/// coordinate vector plus the 7-dimensional Hodge dual of the form, over the
/// sorted quadruple basis.
pub fn cayley_four_form() -> Vec<Rational> {
    let quads = combinations(8, 4);
    let index = |target: &[usize; 4]| -> usize {
        quads
            .iter()
            .position(|t| t.as_slice() == target.as_slice())
            .expect("sorted quadruple is in the basis")
    };
    let mut v = vec![Rational::zero(); quads.len()];
    let terms: [(usize, usize, usize, i64); 7] = [
        (0, 1, 2, 1),
        (0, 3, 4, 1),
        (0, 5, 6, 1),
        (1, 3, 5, 1),
        (1, 4, 6, -1),
        (2, 3, 6, -1),
        (2, 4, 5, -1),
    ];
    for (i, j, k, c) in terms {
        // φ ∧ e₈ part: the wedge with the largest index keeps the sign.
        v[index(&[i, j, k, 7])] += q(c);
        // Hodge dual inside ℝ⁷: coefficient times the sign of the
        // permutation (i, j, k, complement) of (0..7).
        let comp: Vec<usize> = (0..7).filter(|m| *m != i && *m != j && *m != k).collect();
        let perm = [i, j, k, comp[0], comp[1], comp[2], comp[3]];
        let s = perm_sign(&perm);
        v[index(&[comp[0], comp[1], comp[2], comp[3]])] += q(c * s);
    }
    v
}

fn sort4_with_sign(mut idx: [usize; 4]) -> Option<([usize; 4], bool)> {
    let mut negate = false;
    for pass in 0..3 {
        for j in 0..3 - pass {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                negate = !negate;
            }
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((idx, negate))
}

/// Action matrices of so(8) on Λ⁴ℝ⁸ (slot-by-slot derivation).
fn lambda4_actions(alg: &MetricRepresentation) -> Vec<RationalMatrix> {
    let n = alg.n();
    let quads = combinations(n, 4);
    let dim = quads.len();
    let index_of = |target: &[usize; 4]| -> usize {
        quads
            .binary_search_by(|t| t.as_slice().cmp(target.as_slice()))
            .expect("sorted quadruple is in the basis")
    };
    alg.generators()
        .iter()
        .map(|x| {
            let mut m = RationalMatrix::zeros(dim, dim);
            for (col, quad) in quads.iter().enumerate() {
                for slot in 0..4 {
                    for r in 0..n {
                        let c = x.at(r, quad[slot]);
                        if c.is_zero() {
                            continue;
                        }
                        let mut replaced = [quad[0], quad[1], quad[2], quad[3]];
                        replaced[slot] = r;
                        if let Some((sorted, negate)) = sort4_with_sign(replaced) {
                            let row = index_of(&sorted);
                            let add = if negate { -c } else { c.clone() };
                            let cur = m.at(row, col).clone();
                            m.set(row, col, cur + add);
                        }
                    }
                }
            }
            m
        })
        .collect()
}

/// The 21-dimensional spin algebra acting on ℝ⁸, built as the stabilizer of
/// the Cayley 4-form inside so(8).
pub fn spin7() -> MetricRepresentation {
    let so8 = so_n(8);
    let phi = cayley_four_form();
    let actions = lambda4_actions(&so8);
    let d = so8.dim();
    let m = RationalMatrix::from_fn(phi.len(), d, |i, a| actions[a].mul_vec(&phi)[i].clone());
    let kernel = crate::Subspace::kernel_of(&m);
    let handle = crate::liealg::SubalgebraHandle::new(&so8, kernel);
    let rep = MetricRepresentation::from_generators("spin7", handle.matrices(&so8))
        .expect("stabilizer generators validate");
    assert_eq!(rep.dim(), 21, "Cayley-form stabilizer has dimension 21");
    rep
}

/// Adjoint representation of a named base algebra.
pub fn adjoint_of(base: &MetricRepresentation) -> Result<MetricRepresentation, CatalogError> {
    Ok(base.adjoint_rep()?)
}

/// Block-diagonal direct sum of metric representations: the algebras and the
/// spaces are concatenated, and the summand ranges follow the parts.
pub fn direct_sum(name: impl Into<String>, parts: &[&MetricRepresentation]) -> MetricRepresentation {
    assert!(!parts.is_empty());
    let total_n: usize = parts.iter().map(|p| p.n()).sum();
    let mut metric = Vec::with_capacity(total_n);
    let mut gens = Vec::new();
    let mut summands = Vec::new();
    let mut n_off = 0usize;
    let mut d_off = 0usize;
    for p in parts {
        metric.extend(p.metric().iter().cloned());
        for x in p.generators() {
            let mut big = RationalMatrix::zeros(total_n, total_n);
            big.insert_block(n_off, n_off, x);
            gens.push(big);
        }
        for &(s, e) in p.summands() {
            summands.push((d_off + s, d_off + e));
        }
        n_off += p.n();
        d_off += p.dim();
    }
    let mut rep = MetricRepresentation::from_generators_with_metric(name, gens, metric)
        .expect("block-diagonal sum validates");
    rep.set_summands(summands);
    rep
}

/// The same algebra acting diagonally on k copies of its space.
pub fn diagonal_copies(base: &MetricRepresentation, k: usize) -> MetricRepresentation {
    assert!(k >= 1);
    if k == 1 {
        return base.clone();
    }
    let n = base.n();
    let mut metric = Vec::with_capacity(n * k);
    for _ in 0..k {
        metric.extend(base.metric().iter().cloned());
    }
    let gens = base
        .generators()
        .iter()
        .map(|x| {
            let copies: Vec<&RationalMatrix> = (0..k).map(|_| x).collect();
            RationalMatrix::block_diagonal(&copies)
        })
        .collect();
    let mut rep = MetricRepresentation::from_generators_with_metric(
        format!("diag:{}:{k}", base.name()),
        gens,
        metric,
    )
    .expect("diagonal copies validate");
    rep.set_summands(base.summands().to_vec());
    rep
}

/// su(2) acting simultaneously on ℝ⁴ (realified defining module) and ℝ³
/// (adjoint module): generator a acts as x_a ⊕ ad_a.
pub fn su2_standard_plus_adjoint() -> MetricRepresentation {
    let su2 = su_n(2);
    let d = su2.dim();
    let gens: Vec<RationalMatrix> = (0..d)
        .map(|a| {
            let ad = RationalMatrix::from_fn(d, d, |c, b| su2.bracket_coeffs(a, b)[c].clone());
            RationalMatrix::block_diagonal(&[su2.generator(a), &ad])
        })
        .collect();
    MetricRepresentation::from_generators("su2+adjoint", gens)
        .expect("standard-plus-adjoint generators validate")
}

/// Parses a catalog key. Accepted grammar (case-insensitive, parentheses and
/// spaces ignored): `soN`, `uN`, `suN`, `spN`, `spN+sp1`, `spN+u1`, `g2`,
/// `spin7`, `adjoint:<key>`, `diag:<key>:<k>`, `sum:<key>,<key>,…`.
pub fn by_key(key: &str) -> Result<MetricRepresentation, CatalogError> {
    let norm: String = key
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ' '))
        .collect();
    build_normalized(&norm)
}

fn parse_count(digits: &str, key: &str) -> Result<usize, CatalogError> {
    digits
        .parse::<usize>()
        .map_err(|_| CatalogError::UnknownKey(key.to_string()))
}

fn build_normalized(key: &str) -> Result<MetricRepresentation, CatalogError> {
    if let Some(rest) = key.strip_prefix("adjoint:") {
        let base = build_normalized(rest)?;
        return adjoint_of(&base);
    }
    if let Some(rest) = key.strip_prefix("diag:") {
        let (base_key, count) = rest
            .rsplit_once(':')
            .ok_or_else(|| CatalogError::BadParams(format!("diag needs a copy count: {key}")))?;
        let k = parse_count(count, key)?;
        if k < 1 {
            return Err(CatalogError::BadParams("diag needs k >= 1".into()));
        }
        let base = build_normalized(base_key)?;
        return Ok(diagonal_copies(&base, k));
    }
    if let Some(rest) = key.strip_prefix("sum:") {
        let parts: Vec<MetricRepresentation> = rest
            .split(',')
            .map(build_normalized)
            .collect::<Result<_, _>>()?;
        if parts.is_empty() {
            return Err(CatalogError::BadParams("sum needs at least one part".into()));
        }
        let refs: Vec<&MetricRepresentation> = parts.iter().collect();
        return Ok(direct_sum(format!("sum:{rest}"), &refs));
    }
    if let Some((left, right)) = key.split_once('+') {
        let n = left
            .strip_prefix("sp")
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| CatalogError::UnknownKey(key.to_string()))?;
        return match right {
            "sp1" => Ok(sp_n_plus_sp1(n)),
            "u1" => Ok(sp_n_plus_u1(n)),
            _ => Err(CatalogError::UnknownKey(key.to_string())),
        };
    }
    match key {
        "g2" => return Ok(g2()),
        "spin7" => return Ok(spin7()),
        _ => {}
    }
    for (prefix, min, builder) in [
        ("so", 2usize, so_n as fn(usize) -> MetricRepresentation),
        ("su", 2, su_n),
        ("sp", 1, sp_n),
        ("u", 1, u_n),
    ] {
        if let Some(digits) = key.strip_prefix(prefix) {
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                let n = parse_count(digits, key)?;
                if n < min {
                    return Err(CatalogError::BadParams(format!(
                        "{prefix}{n} is below the minimum rank {min}"
                    )));
                }
                return Ok(builder(n));
            }
        }
    }
    Err(CatalogError::UnknownKey(key.to_string()))
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSource {
    /// Stated in the classical holonomy table.
    Classical,
    /// Derived by dimension counting or additivity from classical facts.
    Derived,
}

impl ValueSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            ValueSource::Classical => "classical",
            ValueSource::Derived => "derived",
        }
    }
}

/// One row of the expectation table used by the desk-scale sweep.
#[derive(Debug, Clone)]
pub struct ExpectedRow {
    pub key: &'static str,
    pub space_dim: usize,
    pub algebra_dim: usize,
    pub curvature_dim: (usize, ValueSource),
    pub berger_dim: (usize, ValueSource),
    /// None means vacuous (the curvature space is zero).
    pub einstein_only: (Option<bool>, ValueSource),
}

/// The fixed desk-scale instance list, in sweep order, with the expected
/// values the acceptance suite pins.
pub fn expected_rows() -> Vec<ExpectedRow> {
    use ValueSource::{Classical, Derived};
    vec![
        ExpectedRow {
            key: "so4",
            space_dim: 4,
            algebra_dim: 6,
            curvature_dim: (20, Derived),
            berger_dim: (6, Classical),
            einstein_only: (Some(false), Classical),
        },
        ExpectedRow {
            key: "u2",
            space_dim: 4,
            algebra_dim: 4,
            curvature_dim: (9, Derived),
            berger_dim: (4, Classical),
            einstein_only: (Some(false), Classical),
        },
        ExpectedRow {
            key: "su2",
            space_dim: 4,
            algebra_dim: 3,
            curvature_dim: (5, Derived),
            berger_dim: (3, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "sp2",
            space_dim: 8,
            algebra_dim: 10,
            curvature_dim: (35, Derived),
            berger_dim: (10, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "sp2+sp1",
            space_dim: 8,
            algebra_dim: 13,
            curvature_dim: (36, Derived),
            berger_dim: (13, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "sp1+u1",
            space_dim: 4,
            algebra_dim: 4,
            curvature_dim: (5, Classical),
            berger_dim: (3, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "g2",
            space_dim: 7,
            algebra_dim: 14,
            curvature_dim: (77, Classical),
            berger_dim: (14, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "spin7",
            space_dim: 8,
            algebra_dim: 21,
            curvature_dim: (168, Classical),
            berger_dim: (21, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "adjoint:su3",
            space_dim: 8,
            algebra_dim: 8,
            curvature_dim: (1, Classical),
            berger_dim: (8, Classical),
            einstein_only: (Some(true), Classical),
        },
        ExpectedRow {
            key: "diag:so3:2",
            space_dim: 6,
            algebra_dim: 3,
            curvature_dim: (0, Classical),
            berger_dim: (0, Classical),
            einstein_only: (None, Derived),
        },
        ExpectedRow {
            key: "sum:so3,so4",
            space_dim: 7,
            algebra_dim: 9,
            curvature_dim: (26, Derived),
            berger_dim: (9, Derived),
            einstein_only: (Some(false), Derived),
        },
    ]
}

/// Expected invariant-torsion dimensions ((V⊗𝔤)^𝔤, (V⊗𝔤^⊥)^𝔤, (Λ³V)^𝔤) for
/// the entries where the sweep pins them.
pub fn expected_torsion(key: &str) -> Option<(usize, usize, usize)> {
    match key {
        "g2" => Some((0, 1, 1)),
        "su3" => Some((0, 2, 2)),
        "adjoint:su3" => Some((1, 0, 1)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{invariants, is_irreducible, DEFAULT_SEED};
    use crate::exactlin::elim::SpanSolver;

    #[test]
    fn rotation_algebras_validate() {
        for n in 2..=6 {
            let rep = so_n(n);
            assert_eq!(rep.dim(), n * (n - 1) / 2);
            assert_eq!(rep.n(), n);
        }
    }

    #[test]
    fn unitary_family_dimensions() {
        let u2 = u_n(2);
        assert_eq!((u2.dim(), u2.n()), (4, 4));
        let su2 = su_n(2);
        assert_eq!((su2.dim(), su2.n()), (3, 4));
        let su3 = su_n(3);
        assert_eq!((su3.dim(), su3.n()), (8, 6));
        let u1 = u_n(1);
        assert_eq!((u1.dim(), u1.n()), (1, 2));
    }

    #[test]
    fn unitary_detection_is_a_chain() {
        // su(n) ⊂ u(n) ⊂ so(2n) as subspaces of matrices.
        let so4_flat: Vec<Vec<Rational>> = so_n(4)
            .generators()
            .iter()
            .map(|m| m.flatten_row_major().to_vec())
            .collect();
        let so4_span = SpanSolver::new(&so4_flat);
        let u2_flat: Vec<Vec<Rational>> = u_n(2)
            .generators()
            .iter()
            .map(|m| m.flatten_row_major().to_vec())
            .collect();
        let u2_span = SpanSolver::new(&u2_flat);
        for g in &u2_flat {
            assert!(so4_span.contains(g));
        }
        for g in su_n(2).generators() {
            assert!(u2_span.contains(&g.flatten_row_major().to_vec()));
        }
    }

    #[test]
    fn symplectic_family_dimensions() {
        let sp1 = sp_n(1);
        assert_eq!((sp1.dim(), sp1.n()), (3, 4));
        let sp2 = sp_n(2);
        assert_eq!((sp2.dim(), sp2.n()), (10, 8));
        let pair = sp_n_plus_sp1(2);
        assert_eq!((pair.dim(), pair.n()), (13, 8));
        assert_eq!(pair.summands(), &[(0, 10), (10, 13)]);
        let circle = sp_n_plus_u1(1);
        assert_eq!((circle.dim(), circle.n()), (4, 4));
        assert_eq!(circle.summands(), &[(0, 3), (3, 4)]);
    }

    #[test]
    fn left_and_right_multiplications_commute() {
        // Left by any unit, right by any unit: matrix commutators vanish.
        for lu in [UNIT_I, UNIT_J, UNIT_K] {
            let l = quaternion_matrix(1, &[(0, 0, lu)]);
            for ru in [UNIT_I, UNIT_J, UNIT_K] {
                let r = right_scalar(1, ru);
                assert!(l.commutator(&r).is_zero());
            }
        }
    }

    #[test]
    fn exceptional_stabilizer_dimensions() {
        let g = g2();
        assert_eq!((g.dim(), g.n()), (14, 7));
        // The stabilized form really is invariant.
        let phi = associative_three_form();
        let g_l3 = induce(&g, &Shape::Lambda3);
        let inv = invariants(&g_l3);
        assert!(inv.contains(&phi));
        // And the defining module is irreducible.
        let v = induce(&g, &Shape::V);
        assert!(is_irreducible(&g, &v, DEFAULT_SEED).irreducible);
    }

    #[test]
    fn spin_stabilizer_dimension() {
        let s = spin7();
        assert_eq!((s.dim(), s.n()), (21, 8));
    }

    #[test]
    fn adjoint_su3_has_weighted_metric() {
        let su3 = su_n(3);
        let ad = adjoint_of(&su3).unwrap();
        assert_eq!((ad.dim(), ad.n()), (8, 8));
        // Seven unit weights and one weight 3 after normalization.
        let mut weights: Vec<Rational> = ad.metric().to_vec();
        weights.sort();
        assert_eq!(&weights[..7], vec![Rational::one(); 7].as_slice());
        assert_eq!(weights[7], Rational::from_int(3));
    }

    #[test]
    fn combinators_produce_expected_shapes() {
        let so3 = so_n(3);
        let so4 = so_n(4);
        let sum = direct_sum("sum:so3,so4", &[&so3, &so4]);
        assert_eq!((sum.dim(), sum.n()), (9, 7));
        assert_eq!(sum.summands(), &[(0, 3), (3, 9)]);
        let diag = diagonal_copies(&so3, 2);
        assert_eq!((diag.dim(), diag.n()), (3, 6));
        let both = su2_standard_plus_adjoint();
        assert_eq!((both.dim(), both.n()), (3, 7));
    }

    #[test]
    fn key_parsing_accepts_aliases() {
        assert_eq!(by_key("so4").unwrap().n(), 4);
        assert_eq!(by_key("so(4)").unwrap().n(), 4);
        assert_eq!(by_key("SP2+SP1").unwrap().dim(), 13);
        assert_eq!(by_key("sp(1)+u(1)").unwrap().dim(), 4);
        assert_eq!(by_key("adjoint:su3").unwrap().n(), 8);
        assert_eq!(by_key("diag:so3:2").unwrap().n(), 6);
        assert_eq!(by_key("sum:so3,so4").unwrap().n(), 7);
        assert!(matches!(by_key("nope"), Err(CatalogError::UnknownKey(_))));
        assert!(matches!(by_key("so1"), Err(CatalogError::BadParams(_))));
    }

    #[test]
    fn expectation_table_covers_the_sweep() {
        let rows = expected_rows();
        assert_eq!(rows.len(), 11);
        for row in &rows {
            let rep = by_key(row.key).unwrap();
            assert_eq!(rep.n(), row.space_dim, "space dim for {}", row.key);
            assert_eq!(rep.dim(), row.algebra_dim, "algebra dim for {}", row.key);
        }
    }
}
