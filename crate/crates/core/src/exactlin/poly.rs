//! Polynomials over ℚ: arithmetic, gcd, real-root counting (Sturm),
//! rational-root enumeration, and minimal polynomials of matrices.

use super::elim::ExactlinError;
use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::subspace::Subspace;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Dense univariate polynomial, coefficients in ascending degree order with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    /// x - r
    pub fn linear_root(r: &Rational) -> Self {
        Poly::from_coeffs(vec![-r, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.degree().unwrap();
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        loop {
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
            let k = rem.len() - 1 - d;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let t = &factor * c;
                    rem[k + i] -= &t;
                }
            }
            quot[k] = factor;
            // The leading term cancels exactly.
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divmod(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        self.mul(other).divmod(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rational::from_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() || self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divmod(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RationalMatrix) -> RationalMatrix {
        assert!(m.is_square(), "polynomial evaluation needs a square matrix");
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc.set(i, i, acc.at(i, i) + c);
            }
        }
        acc
    }

    /// All rational roots with multiplicities, sorted ascending, plus a flag
    /// that is false when the candidate enumeration may have been truncated
    /// (huge coefficients); in that case roots can be missing but every
    /// reported root is genuine.
    pub fn rational_roots(&self) -> (Vec<(Rational, usize)>, bool) {
        assert!(!self.is_zero(), "root finding on the zero polynomial");
        let mut p = self.clone();
        let mut roots: Vec<(Rational, usize)> = Vec::new();
        // Roots at zero.
        let mut zero_mult = 0usize;
        while !p.is_constant() && p.coeff(0).is_zero() {
            p = p.divmod(&Poly::monomial(1)).0;
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        if p.is_constant() {
            roots.sort_by(|a, b| a.0.cmp(&b.0));
            return (roots, true);
        }
        // Clear denominators: candidates are ±(divisor of |a0|)/(divisor of |an|).
        let mut l = BigInt::one();
        for c in &p.coeffs {
            l = l.lcm(c.denom());
        }
        let int_coeffs: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let a0 = int_coeffs[0].abs();
        let an = int_coeffs[int_coeffs.len() - 1].abs();
        let (num_divs, num_complete) = divisors(&a0);
        let (den_divs, den_complete) = divisors(&an);
        let complete = num_complete && den_complete;
        let mut candidates: Vec<Rational> = Vec::new();
        for nd in &num_divs {
            for dd in &den_divs {
                let c = Rational::from_ratio(nd.clone(), dd.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if !p.eval(&c).is_zero() {
                continue;
            }
            let mut mult = 0usize;
            let factor = Poly::linear_root(&c);
            loop {
                let (q, r) = p.divmod(&factor);
                if !r.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            roots.push((c, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, complete)
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn count_real_roots(&self) -> usize {
        if self.is_zero() || self.is_constant() {
            return 0;
        }
        let p = self.squarefree_part();
        if p.is_constant() {
            return 0;
        }
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let last = &chain[chain.len() - 1];
            if last.is_zero() || last.is_constant() {
                break;
            }
            let r = chain[chain.len() - 2].rem(last).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        let sign_at = |plus_infinity: bool| -> Vec<i8> {
            chain
                .iter()
                .filter(|q| !q.is_zero())
                .map(|q| {
                    let lead = q.leading();
                    let mut s: i8 = if lead.is_positive() { 1 } else { -1 };
                    if !plus_infinity && q.degree().unwrap_or(0) % 2 == 1 {
                        s = -s;
                    }
                    s
                })
                .collect()
        };
        let variations = |signs: &[i8]| signs.windows(2).filter(|w| w[0] != w[1]).count();
        variations(&sign_at(false)) - variations(&sign_at(true))
    }

    pub fn has_real_root(&self) -> bool {
        self.count_real_roots() > 0
    }

    /// p(x + s).
    pub fn shift(&self, s: &Rational) -> Poly {
        let mut acc = Poly::zero();
        let lin = Poly::from_coeffs(vec![s.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin);
            acc = acc.add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Factorization into monic irreducible factors with multiplicities.
    /// `complete == false` means the analysis budget ran out on some factor,
    /// which is then listed as-is and may secretly be reducible; every other
    /// listed factor is certified irreducible over ℚ.
    pub fn factor(&self) -> PolyFactors {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let leading = self.leading();
        let p = self.monic();
        if p.is_constant() {
            return PolyFactors {
                leading,
                factors: Vec::new(),
                complete: true,
            };
        }
        let sf = p.squarefree_part();
        let (irreducibles, complete) = factor_squarefree(&sf);
        // Multiplicities by repeated exact division of the full polynomial.
        let mut rest = p;
        let mut factors = Vec::with_capacity(irreducibles.len());
        for f in irreducibles {
            let mut mult = 0usize;
            loop {
                let (q, r) = rest.divmod(&f);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            factors.push((f, mult));
        }
        debug_assert!(rest.is_constant());
        factors.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        PolyFactors {
            leading,
            factors,
            complete,
        }
    }
}

/// Result of `Poly::factor`: leading coefficient times the product of the
/// monic factors raised to their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactors {
    pub leading: Rational,
    pub factors: Vec<(Poly, usize)>,
    pub complete: bool,
}

impl PolyFactors {
    pub fn product(&self) -> Poly {
        let mut out = Poly::constant(self.leading.clone());
        for (f, mult) in &self.factors {
            for _ in 0..*mult {
                out = out.mul(f);
            }
        }
        out
    }
}

impl std::fmt::Display for PolyFactors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.leading.is_one() || self.factors.is_empty() {
            parts.push(format!("{}", self.leading));
        }
        for (p, mult) in &self.factors {
            let inner = format!("{p}");
            if *mult == 1 {
                parts.push(format!("({inner})"));
            } else {
                parts.push(format!("({inner})^{mult}"));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Monic irreducible factors of a monic squarefree polynomial, with a flag
/// that is false when some listed factor could not be certified irreducible.
fn factor_squarefree(p: &Poly) -> (Vec<Poly>, bool) {
    let mut out = Vec::new();
    let mut complete = true;
    let mut stack = vec![p.monic()];
    while let Some(q) = stack.pop() {
        if q.is_constant() {
            continue;
        }
        let deg = q.degree().unwrap();
        if deg == 1 {
            out.push(q);
            continue;
        }
        // Linear factors first.
        let (roots, roots_complete) = q.rational_roots();
        if !roots.is_empty() {
            let mut rest = q.clone();
            for (r, mult) in &roots {
                debug_assert_eq!(*mult, 1, "squarefree input");
                let lin = Poly::linear_root(r);
                rest = rest.divmod(&lin).0;
                out.push(lin);
            }
            if !rest.is_constant() {
                if roots_complete {
                    stack.push(rest);
                } else {
                    // Root enumeration may have missed linear factors.
                    out.push(rest.monic());
                    complete = false;
                }
            }
            continue;
        }
        if !roots_complete {
            out.push(q);
            complete = false;
            continue;
        }
        // No rational roots from here on.
        match deg {
            2 | 3 => out.push(q),
            4 => match split_quartic(&q) {
                Some((a, b)) => {
                    // Quadratics without rational roots are irreducible.
                    out.push(a);
                    out.push(b);
                }
                None => out.push(q),
            },
            _ => match kronecker_factor(&q) {
                KroneckerOutcome::Split(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                KroneckerOutcome::Irreducible => out.push(q),
                KroneckerOutcome::BudgetExhausted => {
                    out.push(q);
                    complete = false;
                }
            },
        }
    }
    (out, complete)
}

/// Rational square root, if the argument is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let sn = q.numer().sqrt();
    let sd = q.denom().sqrt();
    if &(&sn * &sn) == q.numer() && &(&sd * &sd) == q.denom() {
        Some(Rational::from_ratio(sn, sd))
    } else {
        None
    }
}

/// Splits a monic quartic without rational roots into two monic quadratics
/// over ℚ, when possible, via the resolvent cubic of its depressed form.
fn split_quartic(p: &Poly) -> Option<(Poly, Poly)> {
    debug_assert_eq!(p.degree(), Some(4));
    debug_assert!(p.leading().is_one());
    let shift = &p.coeff(3) / &Rational::from_int(4);
    let dep = p.shift(&-&shift);
    debug_assert!(dep.coeff(3).is_zero());
    let (pp, qq, rr) = (dep.coeff(2), dep.coeff(1), dep.coeff(0));
    // (y² + uy + v)(y² − uy + w) matches y⁴ + p y² + q y + r exactly when
    // z = u² solves z³ + 2p z² + (p² − 4r) z − q² = 0 (the u = 0 case is the
    // root z = 0, which requires q = 0).
    let resolvent = Poly::from_coeffs(vec![
        -&(&qq * &qq),
        &(&pp * &pp) - &(&Rational::from_int(4) * &rr),
        &Rational::from_int(2) * &pp,
        Rational::one(),
    ]);
    let (roots, _) = resolvent.rational_roots();
    for (z, _) in roots {
        let Some(u) = rational_sqrt(&z) else { continue };
        let (v, w) = if u.is_zero() {
            if !qq.is_zero() {
                continue;
            }
            // y⁴ + p y² + r = (y² + v)(y² + w), v + w = p, vw = r.
            let disc = &(&pp * &pp) - &(&Rational::from_int(4) * &rr);
            let Some(s) = rational_sqrt(&disc) else { continue };
            let half = Rational::new(1, 2);
            (&(&pp - &s) * &half, &(&pp + &s) * &half)
        } else {
            let half = Rational::new(1, 2);
            let qu = &qq / &u;
            let base = &pp + &z;
            (&(&base - &qu) * &half, &(&base + &qu) * &half)
        };
        let f = Poly::from_coeffs(vec![v, u.clone(), Rational::one()]);
        let g = Poly::from_coeffs(vec![w, -&u, Rational::one()]);
        if f.mul(&g) == dep {
            return Some((f.shift(&shift), g.shift(&shift)));
        }
    }
    None
}

enum KroneckerOutcome {
    Split(Poly, Poly),
    Irreducible,
    BudgetExhausted,
}

/// Interpolation-based factor search for monic squarefree polynomials of
/// degree ≥ 5 with no rational roots: tries small factor degrees by matching
/// divisors of integer values at sample points. The combination budget keeps
/// worst cases bounded; exhausting it is reported rather than guessed around.
fn kronecker_factor(p: &Poly) -> KroneckerOutcome {
    let deg = p.degree().unwrap();
    // Integerize: P = c·p with integer coefficients.
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let scaled = p.scale(&Rational::from_bigint(l));
    const BUDGET: usize = 200_000;
    let mut spent = 0usize;
    let mut exhausted = false;
    for k in 2..=deg / 2 {
        // Sample points 0, 1, -1, 2, -2, ...
        let points: Vec<Rational> = (0..=k as i64)
            .map(|t| {
                let m = (t + 1) / 2;
                Rational::from_int(if t % 2 == 1 { m } else { -m })
            })
            .collect();
        let values: Vec<Rational> = points.iter().map(|x| scaled.eval(x)).collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()), "no rational roots");
        let divisor_lists: Vec<Vec<BigInt>> = values
            .iter()
            .map(|v| {
                let (divs, complete) = divisors(v.numer());
                if !complete {
                    exhausted = true;
                }
                divs
            })
            .collect();
        // Signed divisor choices per point; the first point's sign can be
        // fixed because g and −g generate the same factorization candidates
        // up to the sign of the cofactor.
        let mut counts: Vec<usize> = divisor_lists.iter().map(|d| d.len() * 2).collect();
        counts[0] /= 2;
        let total: usize = counts.iter().product();
        if spent + total > BUDGET {
            exhausted = true;
            continue;
        }
        spent += total;
        for combo in 0..total {
            let mut rem = combo;
            let mut targets = Vec::with_capacity(k + 1);
            for (i, cnt) in counts.iter().enumerate() {
                let pick = rem % cnt;
                rem /= cnt;
                let d = &divisor_lists[i][pick / 2];
                let negate = pick % 2 == 1;
                targets.push(if negate {
                    Rational::from_bigint(-d)
                } else {
                    Rational::from_bigint(d.clone())
                });
            }
            if let Some(g) = lagrange(&points, &targets) {
                if g.degree() == Some(k) {
                    let gm = g.monic();
                    let (q, r) = p.divmod(&gm);
                    if r.is_zero() {
                        return KroneckerOutcome::Split(gm, q.monic());
                    }
                }
            }
        }
    }
    if exhausted {
        KroneckerOutcome::BudgetExhausted
    } else {
        KroneckerOutcome::Irreducible
    }
}

/// Interpolating polynomial through the given points, or None on degeneracy.
fn lagrange(xs: &[Rational], ys: &[Rational]) -> Option<Poly> {
    let mut acc = Poly::zero();
    for (i, yi) in ys.iter().enumerate() {
        let mut term = Poly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let dx = &xs[i] - xj;
            if dx.is_zero() {
                return None;
            }
            term = term.mul(&Poly::linear_root(xj)).scale(&dx.recip());
        }
        acc = acc.add(&term);
    }
    Some(acc)
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// All positive divisors of |n| (n nonzero), with a completeness flag.
/// Factors by trial division up to 10^6; a leftover below 10^12 is provably
/// prime, a larger one is treated as prime and flagged incomplete. The divisor
/// list is capped to keep pathological inputs from exploding.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let bound = 1_000_000u64;
    let mut complete = true;
    let mut d = 2u64;
    while d <= bound {
        let big_d = BigInt::from(d);
        if (&big_d * &big_d) > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &big_d).is_zero() {
            m /= &big_d;
            e += 1;
        }
        if e > 0 {
            factors.push((big_d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let bound_sq = BigInt::from(bound) * BigInt::from(bound);
        if m < bound_sq {
            // No divisor up to its square root, so the leftover is prime.
            factors.push((m, 1));
        } else {
            let s = m.sqrt();
            if &s * &s == m && s < bound_sq {
                // A square of a prime: s has no factor below the bound either.
                factors.push((s, 2));
            } else {
                factors.push((m, 1));
                complete = false;
            }
        }
    }
    let mut divs = vec![BigInt::one()];
    const CAP: usize = 100_000;
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d0 in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d0 * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > CAP {
            divs.truncate(CAP);
            complete = false;
        }
    }
    (divs, complete)
}

/// Minimal polynomial of a square matrix: the monic generator of its
/// annihilating ideal, built as the lcm of Krylov-cycle annihilators of the
/// standard basis vectors.
pub fn minimal_polynomial(m: &RationalMatrix) -> Result<Poly, ExactlinError> {
    if !m.is_square() {
        return Err(ExactlinError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(operator_minimal_polynomial(m.rows(), |v| m.mul_vec(v)))
}

/// Minimal polynomial of a linear operator given only through its application
/// to vectors; never materializes the operator matrix.
pub fn operator_minimal_polynomial(
    n: usize,
    mut apply: impl FnMut(&[Rational]) -> Vec<Rational>,
) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut min = Poly::one();
    for start in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[start] = Rational::one();
        // Skip vectors already annihilated by the current candidate.
        if apply_poly_through(&min, &mut apply, &v)
            .iter()
            .all(Rational::is_zero)
        {
            continue;
        }
        let mut krylov: Vec<Vec<Rational>> = vec![v.clone()];
        let local = loop {
            let next = apply(krylov.last().unwrap());
            let span = Subspace::from_spanning(krylov.clone(), n);
            if span.contains(&next) {
                // Express `next` in the original Krylov vectors (not the
                // canonical basis): the dependence gives the cycle polynomial
                // x^k - sum c_i x^i annihilating the start vector.
                let cols = RationalMatrix::from_fn(n, krylov.len(), |i, j| krylov[j][i].clone());
                let coeffs = super::elim::solve(&cols, &next)
                    .expect("vector known to lie in the Krylov span");
                let mut poly_coeffs: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
                poly_coeffs.push(Rational::one());
                break Poly::from_coeffs(poly_coeffs);
            }
            krylov.push(next);
        };
        min = min.lcm(&local);
        if min.degree() == Some(n) {
            break;
        }
    }
    min
}

fn apply_poly_through(
    p: &Poly,
    apply: &mut impl FnMut(&[Rational]) -> Vec<Rational>,
    v: &[Rational],
) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = apply(&acc);
        for (a, vi) in acc.iter_mut().zip(v) {
            *a += &(c * vi);
        }
    }
    acc
}

/// Sparse bivariate polynomial in two formal variables, exponents as
/// (first, second), used for symbolic parameter equations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    /// a^i b^j with coefficient c.
    pub fn term(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Poly2 {
        if s.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(c * &a.pow(i) * &b.pow(j));
        }
        acc
    }

    /// Substitute a fixed value for the first variable, leaving a univariate
    /// polynomial in the second.
    pub fn eval_first(&self, a: &Rational) -> Poly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let v = c * &a.pow(i);
            if coeffs.len() <= j as usize {
                coeffs.resize(j as usize + 1, Rational::zero());
            }
            coeffs[j as usize] += &v;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Substitute a fixed value for the second variable.
    pub fn eval_second(&self, b: &Rational) -> Poly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let v = c * &b.pow(j);
            if coeffs.len() <= i as usize {
                coeffs.resize(i as usize + 1, Rational::zero());
            }
            coeffs[i as usize] += &v;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Render with the given variable names, terms in graded order.
    pub fn render(&self, a: &str, b: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        // Ascending total degree; within a degree the first variable's higher
        // powers come first (a^2, a*b, b^2).
        keys.sort_by_key(|&&(i, j)| (i + j, j));
        for &&(i, j) in &keys {
            let c = &self.terms[&(i, j)];
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (1, 0) => a.to_string(),
                (0, 1) => b.to_string(),
                (i, 0) => format!("{a}^{i}"),
                (0, j) => format!("{b}^{j}"),
                (1, 1) => format!("{a}*{b}"),
                (1, j) => format!("{a}*{b}^{j}"),
                (i, 1) => format!("{a}^{i}*{b}"),
                (i, j) => format!("{a}^{i}*{b}^{j}"),
            };
            let part = if mono.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let p = poly(&[-1, 0, 0, 1]);
        let d = poly(&[-1, 1]);
        let (quot, rem) = p.divmod(&d);
        assert_eq!(quot, poly(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (_, rem2) = poly(&[1, 0, 1]).divmod(&d);
        assert_eq!(rem2, poly(&[2]));
    }

    #[test]
    fn gcd_extracts_common_factor() {
        // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
        let a = poly(&[-1, 0, 1]);
        let b = poly(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
        // Coprime pair.
        assert_eq!(poly(&[1, 0, 1]).gcd(&poly(&[-2, 0, 1])), Poly::one());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (x-1)^2 (x+2) -> (x-1)(x+2)
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        assert_eq!(p.squarefree_part(), poly(&[-1, 1]).mul(&poly(&[2, 1])).monic());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1)^2 (2x + 3)(3x - 1)
        let p = poly(&[-1, 1])
            .mul(&poly(&[-1, 1]))
            .mul(&poly(&[3, 2]))
            .mul(&poly(&[-1, 3]));
        let (roots, complete) = p.rational_roots();
        assert!(complete);
        assert_eq!(
            roots,
            vec![
                (Rational::new(-3, 2), 1),
                (Rational::new(1, 3), 1),
                (q(1), 2),
            ]
        );
    }

    #[test]
    fn sturm_counts_real_roots() {
        assert_eq!(poly(&[1, 0, 1]).count_real_roots(), 0); // x^2 + 1
        assert_eq!(poly(&[-2, 0, 1]).count_real_roots(), 2); // x^2 - 2
        assert_eq!(poly(&[0, -1, 0, 1]).count_real_roots(), 3); // x^3 - x
        assert!(!poly(&[1, 1, 1]).has_real_root()); // x^2 + x + 1
    }

    #[test]
    fn minimal_polynomial_of_diagonal_and_nilpotent() {
        let d = RationalMatrix::diagonal(&[q(1), q(1), q(2)]);
        let m = minimal_polynomial(&d).unwrap();
        assert_eq!(m, poly(&[-1, 1]).mul(&poly(&[-2, 1])));
        let nil = RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&nil).unwrap(), Poly::monomial(2));
        assert!(m.eval_matrix(&d).is_zero());
    }

    #[test]
    fn factorization_over_rationals() {
        // x⁴ - 1 = (x-1)(x+1)(x²+1)
        let p = poly(&[-1, 0, 0, 0, 1]);
        let f = p.factor();
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![
                (poly(&[-1, 1]), 1),
                (poly(&[1, 1]), 1),
                (poly(&[1, 0, 1]), 1),
            ]
        );
        assert_eq!(f.product(), p);

        // x⁴ + 4 = (x²-2x+2)(x²+2x+2): no rational roots, resolvent split.
        let p = poly(&[4, 0, 0, 0, 1]);
        let f = p.factor();
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![(poly(&[2, -2, 1]), 1), (poly(&[2, 2, 1]), 1)]
        );

        // x⁴ + x + 1 is irreducible.
        let f = poly(&[1, 1, 0, 0, 1]).factor();
        assert!(f.complete);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.degree(), Some(4));

        // Multiplicities and leading coefficient: 2(x-3)²(x²+x+1)
        let p = poly(&[-3, 1])
            .mul(&poly(&[-3, 1]))
            .mul(&poly(&[1, 1, 1]))
            .scale(&q(2));
        let f = p.factor();
        assert!(f.complete);
        assert_eq!(f.leading, q(2));
        assert_eq!(f.factors, vec![(poly(&[-3, 1]), 2), (poly(&[1, 1, 1]), 1)]);
        assert_eq!(f.product(), p);
    }

    #[test]
    fn degree_six_product_of_quadratics_factors() {
        // (x²+1)(x²+2)(x²+3): degree 6, no rational roots; found by the
        // interpolation search.
        let p = poly(&[1, 0, 1]).mul(&poly(&[2, 0, 1])).mul(&poly(&[3, 0, 1]));
        let f = p.factor();
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![
                (poly(&[1, 0, 1]), 1),
                (poly(&[2, 0, 1]), 1),
                (poly(&[3, 0, 1]), 1),
            ]
        );
    }

    #[test]
    fn polynomial_display_reads_naturally() {
        assert_eq!(format!("{}", poly(&[-2, 0, 1])), "x^2 - 2");
        assert_eq!(format!("{}", poly(&[1, -1])), "-x + 1");
        let f = poly(&[-1, 0, 0, 0, 1]).factor();
        assert_eq!(format!("{f}"), "(x - 1) * (x + 1) * (x^2 + 1)");
    }

    #[test]
    fn bivariate_arithmetic_and_evaluation() {
        // p = 1 + 2ab + b^2
        let mut p = Poly2::constant(q(1));
        p.add_term(1, 1, q(2));
        p.add_term(0, 2, q(1));
        assert_eq!(p.eval(&q(2), &q(3)), q(1 + 12 + 9));
        let at_a2 = p.eval_first(&q(2));
        assert_eq!(at_a2, poly(&[1, 4, 1]));
        let prod = p.mul(&Poly2::term(1, 0, q(3)));
        assert_eq!(prod.eval(&q(2), &q(3)), q(3 * 2 * 22));
        assert_eq!(p.render("x", "y"), "1 + 2*x*y + y^2");
    }
}
