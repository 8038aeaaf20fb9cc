//! Dense row-major rational matrices.
//!
//! Dense storage is deliberate: the sizes this crate meets (a few hundred rows
//! and columns) are comfortably handled once the multiply kernels skip zero
//! entries, and dense layout keeps the elimination code simple and exact.

use super::rational::Rational;

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = RationalMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals, mostly for tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Column-major flattening `(i, j) -> j * rows + i` is never used; the
    /// crate-wide convention is row-major `(i, j) -> i * cols + j`.
    pub fn flatten_row_major(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> RationalMatrix {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, s: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Adds `s * other` in place.
    pub fn add_scaled(&mut self, s: &Rational, other: &RationalMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    fn nonzeros(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Matrix product. Picks the loop order that skips zeros of the sparser
    /// factor; the result is identical either way.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        if self.nonzeros() <= other.nonzeros() {
            // Scan nonzeros of the left factor: out[i] += A[i][k] * B[k].
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..other.cols {
                        let b = other.at(k, j);
                        if !b.is_zero() {
                            let cell = &mut out.data[i * out.cols + j];
                            *cell += &(a * b);
                        }
                    }
                }
            }
        } else {
            // Scan nonzeros of the right factor: out[.][j] += B[k][j] * A[.][k].
            for k in 0..other.rows {
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    for i in 0..self.rows {
                        let a = self.at(i, k);
                        if !a.is_zero() {
                            let cell = &mut out.data[i * out.cols + j];
                            *cell += &(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product with zero skipping.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector");
        let mut out = vec![Rational::zero(); self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = Rational::zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc += &(a * x);
                }
            }
            out[i] = acc;
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &RationalMatrix) -> RationalMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn stack_rows(blocks: &[&RationalMatrix]) -> RationalMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        RationalMatrix { rows, cols, data }
    }

    /// Places `block` at offset `(i0, j0)`, overwriting.
    pub fn insert_block(&mut self, i0: usize, j0: usize, block: &RationalMatrix) {
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.at(i, j).clone());
            }
        }
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(blocks: &[&RationalMatrix]) -> RationalMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = RationalMatrix::zeros(rows, cols);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            out.insert_block(i0, j0, b);
            i0 += b.rows;
            j0 += b.cols;
        }
        out
    }

    /// Kronecker product, row-major with the left factor on the slow index.
    pub fn kronecker(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        let b = other.at(p, q);
                        if !b.is_zero() {
                            out.set(i * other.rows + p, j * other.cols + q, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest absolute value of any numerator after putting entries over a
    /// common denominator of 1 (i.e. max |p| over entries p/q). Report metric.
    pub fn max_abs_numerator(&self) -> num_bigint::BigInt {
        use num_traits::Zero;
        let mut best = num_bigint::BigInt::zero();
        for v in &self.data {
            let a = num_traits::Signed::abs(v.numer());
            if a > best {
                best = a;
            }
        }
        best
    }
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
