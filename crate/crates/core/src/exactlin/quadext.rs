//! Arithmetic in real quadratic extensions ℚ(√d), plus elimination generic
//! over the scalar field.
//!
//! Used when an invariant subspace only splits after adjoining a square root:
//! eigenvalues (r ± s√d)/t of a symmetric intertwiner are irrational exactly
//! when the discriminant d is not a perfect square, and the corresponding
//! eigenbases live over ℚ(√d).

use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Minimal field interface for elimination generic over the scalars.
pub trait FieldScalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn recip(&self) -> Self;
}

impl FieldScalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        Rational::recip(self)
    }
}

/// Removes square factors found by trial division, returning (squarefree part,
/// extracted square root). For the small discriminants arising here the
/// factorization always completes.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "discriminant must be positive");
    let mut m = n.clone();
    let mut root = BigInt::one();
    let mut d = BigInt::from(2u32);
    while (&d * &d) <= m {
        let dd = &d * &d;
        while (&m % &dd).is_zero() {
            m /= &dd;
            root *= &d;
        }
        d += 1u32;
        if d > BigInt::from(1_000_000u64) {
            break;
        }
    }
    (m, root)
}

/// An element a + b·√d of ℚ(√d). The radicand d is a positive squarefree
/// integer carried by each element; purely rational values use d = 0 and
/// unify with any radicand on contact.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadExt {
    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    /// a + b√d. The radicand is reduced to its squarefree part, with the
    /// square root folded into b.
    pub fn new(a: Rational, b: Rational, d: &BigInt) -> Self {
        if b.is_zero() {
            return QuadExt::rational(a);
        }
        let (sf, root) = squarefree_decompose(d);
        if sf.is_one() {
            // The radicand was a perfect square: the element is rational.
            return QuadExt::rational(a + b * Rational::from_bigint(root));
        }
        QuadExt {
            a,
            b: b * Rational::from_bigint(root),
            d: sf,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm a^2 - d b^2; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &(&self.b * &self.b) * &Rational::from_bigint(self.d.clone())
    }

    fn unified_radicand(&self, other: &Self) -> BigInt {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d.clone(),
            (false, true) => self.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed radicands in one expression");
                self.d.clone()
            }
        }
    }
}

impl FieldScalar for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        let d = self.unified_radicand(other);
        let b = &self.b + &other.b;
        QuadExt {
            a: &self.a + &other.a,
            d: if b.is_zero() { BigInt::zero() } else { d },
            b,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        FieldScalar::add(self, &FieldScalar::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        let d = self.unified_radicand(other);
        let dq = Rational::from_bigint(d.clone());
        let a = &self.a * &other.a + &(&self.b * &other.b) * &dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadExt {
            a,
            d: if b.is_zero() { BigInt::zero() } else { d },
            b,
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
    fn recip(&self) -> Self {
        assert!(!FieldScalar::is_zero(self), "division by zero");
        let n = self.norm().recip();
        QuadExt {
            a: &self.a * &n,
            b: -&self.b * &n,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reduced row echelon form over any field, first-nonzero pivoting.
/// Returns the pivot columns.
pub fn rref_generic<T: FieldScalar>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut().skip(c) {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[c], T::zero());
            for (j, pv) in pivot_row.iter().enumerate().skip(c + 1) {
                if !pv.is_zero() {
                    row[j] = row[j].sub(&factor.mul(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical kernel basis over any field: free-column construction followed by
/// a second reduction of the resulting vectors as rows.
pub fn kernel_generic<T: FieldScalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut work: Vec<Vec<T>> = rows.to_vec();
    let pivots = rref_generic(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut kernel: Vec<Vec<T>> = Vec::new();
    for f in 0..ncols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![T::zero(); ncols];
        v[f] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            let entry = &work[i][f];
            if !entry.is_zero() {
                v[p] = entry.neg();
            }
        }
        kernel.push(v);
    }
    rref_generic(&mut kernel);
    while kernel.last().is_some_and(|v| v.iter().all(T::is_zero)) {
        kernel.pop();
    }
    kernel
}
