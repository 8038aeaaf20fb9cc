//! Exact elimination: fraction-free (Bareiss) rank and determinants over the
//! integers, and reduced row echelon form over the rationals.
//!
//! Pivot choice is deterministic everywhere: columns are processed left to
//! right and within a column the first row of maximal absolute value wins.
//! Reduced echelon output does not depend on the pivot choice, so the rule only
//! controls intermediate entry growth; rank and determinant inherit full
//! determinism from it.

use super::matrix::RationalMatrix;
use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Errors surfaced by the linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactlinError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
}

/// Compare |a| and |b| exactly via cross-multiplication.
fn cmp_abs(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    let left = a.numer().abs() * b.denom();
    let right = b.numer().abs() * a.denom();
    left.cmp(&right)
}

/// Reduced row echelon form of a list of row vectors, in place.
/// Returns the pivot columns in increasing order; zero rows sink to the bottom.
pub fn rref_in_place(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // First row of maximal absolute value in this column.
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if rows[i][c].is_zero() {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    if cmp_abs(&rows[i][c], &rows[b][c]) == std::cmp::Ordering::Greater {
                        best = Some(i);
                    }
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[c], Rational::zero());
            for (j, pv) in pivot_row.iter().enumerate().skip(c + 1) {
                if !pv.is_zero() {
                    row[j] -= &(&factor * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Result of a reduced row echelon computation on a matrix.
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

pub fn rref(m: &RationalMatrix) -> Rref {
    let mut rows = m.row_vecs();
    let pivots = rref_in_place(&mut rows);
    Rref {
        rows,
        pivots,
        ncols: m.cols(),
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel spanning vectors from the standard free-column construction.
    /// One vector per free column, in free-column order: unit at the free
    /// column, minus the reduced column entries at the pivot columns.
    pub fn kernel_vectors(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        for f in 0..self.ncols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.ncols];
            v[f] = Rational::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                let entry = &self.rows[i][f];
                if !entry.is_zero() {
                    v[p] = -entry;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Clears denominators row by row, returning an integer matrix as rows and the
/// scale factor applied to each row.
fn integer_rows(m: &RationalMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut l = BigInt::one();
        for v in m.row(i) {
            l = l.lcm(v.denom());
        }
        let row: Vec<BigInt> = m
            .row(i)
            .iter()
            .map(|v| v.numer() * (&l / v.denom()))
            .collect();
        rows.push(row);
        scales.push(l);
    }
    (rows, scales)
}

/// Rank by fraction-free Bareiss elimination on the denominator-cleared matrix.
/// Intermediate entries are exact minors of the scaled matrix; the single-step
/// division is always exact.
pub fn rank(m: &RationalMatrix) -> usize {
    let (mut a, _) = integer_rows(m);
    bareiss(&mut a).0
}

/// Runs Bareiss elimination in place; returns (rank, swap sign, last pivot).
fn bareiss(a: &mut [Vec<BigInt>]) -> (usize, i8, BigInt) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1i8;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..nrows {
            if a[i][c].is_zero() {
                continue;
            }
            match best {
                None => best = Some(i),
                Some(b) => {
                    if a[i][c].abs() > a[b][c].abs() {
                        best = Some(i);
                    }
                }
            }
        }
        let Some(p) = best else { continue };
        if p != r {
            a.swap(r, p);
            sign = -sign;
        }
        let pivot = a[r][c].clone();
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &pivot * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    (r, sign, prev)
}

/// Exact determinant. The matrix must be square.
pub fn determinant(m: &RationalMatrix) -> Result<Rational, ExactlinError> {
    if !m.is_square() {
        return Err(ExactlinError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, scales) = integer_rows(m);
    let (rank, sign, last_pivot) = bareiss(&mut a);
    if rank < n {
        return Ok(Rational::zero());
    }
    let mut denom = BigInt::one();
    for s in scales {
        denom *= s;
    }
    let mut det = Rational::from_ratio(last_pivot, denom);
    if sign < 0 {
        det = -det;
    }
    Ok(det)
}

/// Solves `m x = rhs` exactly. The canonical solution has all free variables
/// set to zero.
pub fn solve(m: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, ExactlinError> {
    assert_eq!(m.rows(), rhs.len(), "rhs length mismatch");
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut rows);
    let aug_col = m.cols();
    if pivots.last().is_some_and(|&p| p == aug_col) {
        return Err(ExactlinError::NoSolution);
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][aug_col].clone();
    }
    Ok(x)
}

/// Exact inverse, or `None` when singular. The matrix must be square.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert!(m.is_square(), "inverse of non-square matrix");
    let n = m.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref_in_place(&mut rows);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(RationalMatrix::from_rows(
        rows.into_iter().map(|r| r[n..].to_vec()).collect(),
    ))
}

/// Leading-principal-minor test for symmetric positive definiteness.
pub fn is_positive_definite(m: &RationalMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    for k in 1..=n {
        let minor = RationalMatrix::from_fn(k, k, |i, j| m.at(i, j).clone());
        match determinant(&minor) {
            Ok(d) if d.is_positive() => {}
            _ => return false,
        }
    }
    true
}

/// Repeated coordinate solves against a fixed spanning set.
///
/// The columns passed to `new` must be linearly independent; they are kept in
/// their original order (structure constants depend on it). Internally stores
/// the row transform E with E*B in reduced echelon form, so each query costs
/// one matrix-vector product.
pub struct SpanSolver {
    transform: RationalMatrix,
    pivot_rows: Vec<usize>,
    zero_rows: Vec<usize>,
    dim: usize,
    ambient: usize,
}

impl SpanSolver {
    /// `columns[k]` is the k-th spanning vector. Panics if dependent.
    pub fn new(columns: &[Vec<Rational>]) -> Self {
        let k = columns.len();
        let ambient = columns.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<Rational>> = (0..ambient)
            .map(|i| {
                let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
                row.extend((0..ambient).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows);
        let basis_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < k).collect();
        assert_eq!(basis_pivots.len(), k, "spanning set is linearly dependent");
        // Row i of the reduced system corresponds to pivot column pivots[i].
        let mut pivot_rows = vec![0usize; k];
        let mut zero_rows = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            match pivots.get(i) {
                Some(&p) if p < k => pivot_rows[p] = i,
                _ => {
                    // Either a pivot inside the identity part (cannot happen for
                    // independent columns followed by I) or a fully reduced row:
                    // both mean the combination must vanish for consistency.
                    if row[..k].iter().all(Rational::is_zero) {
                        zero_rows.push(i);
                    }
                }
            }
        }
        let transform = RationalMatrix::from_rows(
            rows.into_iter().map(|r| r[k..].to_vec()).collect(),
        );
        SpanSolver {
            transform,
            pivot_rows,
            zero_rows,
            dim: k,
            ambient,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v` in the spanning set, or `None` if `v` is outside it.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let w = self.transform.mul_vec(v);
        for &i in &self.zero_rows {
            if !w[i].is_zero() {
                return None;
            }
        }
        Some(self.pivot_rows.iter().map(|&i| w[i].clone()).collect())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_simple_matrices() {
        // Two dependent rows.
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
        let id = RationalMatrix::identity(4);
        assert_eq!(rank(&id), 4);
        let z = RationalMatrix::zeros(3, 5);
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn kernel_of_row_sums() {
        // Kernel of [1 1] is spanned by (1, -1) after canonicalization.
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let r = rref(&m);
        let kern = r.kernel_vectors();
        assert_eq!(kern.len(), 1);
        assert_eq!(kern[0], vec![Rational::from_int(-1), Rational::one()]);
    }

    #[test]
    fn solve_underdetermined_sets_free_variables_to_zero() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let x = solve(&m, &[Rational::from_int(2)]).unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::zero()]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 0], &[1, 0]]);
        let rhs = vec![Rational::one(), Rational::from_int(2)];
        assert_eq!(solve(&m, &rhs), Err(ExactlinError::NoSolution));
    }

    #[test]
    fn determinant_exact() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&m).unwrap(), Rational::one());
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 4), Rational::new(1, 5)],
        ]);
        assert_eq!(determinant(&m).unwrap(), Rational::new(1, 60));
        let singular = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&singular).unwrap(), Rational::zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert!(invert(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn positive_definiteness() {
        let good = RationalMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]]);
        assert!(is_positive_definite(&good));
        let bad = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]]);
        assert!(!is_positive_definite(&bad));
    }

    #[test]
    fn span_solver_coordinates() {
        let b1 = vec![Rational::one(), Rational::zero(), Rational::one()];
        let b2 = vec![Rational::zero(), Rational::one(), Rational::one()];
        let solver = SpanSolver::new(&[b1, b2]);
        let v = vec![
            Rational::from_int(2),
            Rational::from_int(3),
            Rational::from_int(5),
        ];
        assert_eq!(
            solver.coords(&v).unwrap(),
            vec![Rational::from_int(2), Rational::from_int(3)]
        );
        let outside = vec![Rational::one(), Rational::zero(), Rational::zero()];
        assert!(solver.coords(&outside).is_none());
    }

    #[test]
    fn rank_matches_rref_rank_on_rational_entries() {
        // Rows one and two are dependent (3 x row1 = row2), row three is not.
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::new(1, 3), Rational::zero()],
            vec![Rational::new(3, 2), Rational::one(), Rational::zero()],
            vec![Rational::zero(), Rational::new(1, 5), Rational::new(-2, 7)],
        ]);
        assert_eq!(rank(&m), rref(&m).rank());
        assert_eq!(rank(&m), 2);
    }
}
