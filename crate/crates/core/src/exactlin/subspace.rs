//! Subspaces of ℚ^n with a canonical basis.
//!
//! Every subspace is stored as the reduced row echelon form of any spanning
//! set, so two subspaces are equal exactly when their stored bases are equal,
//! and coordinates against the basis can be read off at the pivot positions
//! without solving.

use super::elim::{rref, rref_in_place, Rref};
use super::matrix::RationalMatrix;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    ambient: usize,
}

impl Subspace {
    /// The zero subspace of ℚ^ambient.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Vec::new(),
            pivots: Vec::new(),
            ambient,
        }
    }

    /// The full space ℚ^ambient.
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            basis,
            pivots: (0..ambient).collect(),
            ambient,
        }
    }

    /// Canonicalizes an arbitrary spanning set.
    pub fn from_spanning(vectors: Vec<Vec<Rational>>, ambient: usize) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let mut rows = vectors;
        let pivots = rref_in_place(&mut rows);
        rows.truncate(pivots.len());
        Subspace {
            basis: rows,
            pivots,
            ambient,
        }
    }

    /// The kernel of a matrix, canonicalized.
    pub fn kernel_of(m: &RationalMatrix) -> Self {
        let r = rref(m);
        Self::from_kernel_rref(&r)
    }

    pub fn from_kernel_rref(r: &Rref) -> Self {
        Self::from_spanning(r.kernel_vectors(), r.ncols)
    }

    /// The column span of a matrix, canonicalized.
    pub fn column_span(m: &RationalMatrix) -> Self {
        let vectors = (0..m.cols()).map(|j| m.col_vec(j)).collect();
        Self::from_spanning(vectors, m.rows())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis vectors, as rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors as the columns of an ambient x dim matrix.
    pub fn basis_columns(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.ambient, self.dim(), |i, j| self.basis[j][i].clone())
    }

    /// Coordinates of `v` in the canonical basis, read off at the pivot
    /// positions and verified by reconstruction. `None` if `v` lies outside.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // Verify: v must equal the combination of basis rows with those coords.
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *r -= &(c * b);
                }
            }
        }
        if residual.iter().all(Rational::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::from_spanning(vectors, self.ambient)
    }

    /// Intersection of two subspaces of the same ambient space.
    ///
    /// A vector in both spaces is A x = B y; solving [A | -B] (columns are the
    /// two bases) for its kernel and pushing the x-part through A gives a
    /// spanning set of the intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let ka = self.dim();
        let kb = other.dim();
        let stacked = RationalMatrix::from_fn(self.ambient, ka + kb, |i, j| {
            if j < ka {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - ka][i]
            }
        });
        let kernel = rref(&stacked).kernel_vectors();
        let vectors: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (x, row) in k[..ka].iter().zip(&self.basis) {
                    if x.is_zero() {
                        continue;
                    }
                    for (vi, b) in v.iter_mut().zip(row) {
                        if !b.is_zero() {
                            *vi += &(x * b);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(vectors, self.ambient)
    }

    /// Orthogonal complement with respect to a symmetric bilinear form given by
    /// its Gram matrix on the ambient coordinates: all v with b^T G v = 0 for
    /// every basis vector b.
    pub fn orthogonal_complement(&self, gram: &RationalMatrix) -> Subspace {
        assert_eq!(gram.rows(), self.ambient, "Gram dimension mismatch");
        assert_eq!(gram.cols(), self.ambient, "Gram dimension mismatch");
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        let b = RationalMatrix::from_rows(self.basis.clone());
        let constraints = b.mul(gram);
        Subspace::kernel_of(&constraints)
    }
}
