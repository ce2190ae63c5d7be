//! Dense univariate polynomials over Q and quadratic forms with rational
//! coefficients, enough for restricting quadrics to linear subspaces and for
//! small resultants.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::rational::{self, Rational};
use crate::field::FieldElement;

/// Coefficients in increasing degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &-rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", rational::to_string(c))?;
            match i {
                0 => {}
                1 => f.write_str("·x")?,
                _ => write!(f, "·x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion along the first row. Meant for the
/// small Sylvester matrices used here.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::constant(Rational::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &determinant(&minor);
                acc = if c % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Resultant of `a₂x² + a₁x + a₀` and `b₂x² + b₁x + b₀` (coefficients in
/// Q[y]) with respect to `x`, from the 4 × 4 Sylvester matrix.
pub fn quadratic_resultant(a: [&Poly; 3], b: [&Poly; 3]) -> Poly {
    let z = Poly::zero();
    let [a0, a1, a2] = a;
    let [b0, b1, b2] = b;
    let m = vec![
        vec![a2.clone(), a1.clone(), a0.clone(), z.clone()],
        vec![z.clone(), a2.clone(), a1.clone(), a0.clone()],
        vec![b2.clone(), b1.clone(), b0.clone(), z.clone()],
        vec![z, b2.clone(), b1.clone(), b0.clone()],
    ];
    determinant(&m)
}

/// A quadratic form `xᵀMx` in `n` variables with symmetric rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    m: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn zero(n: usize) -> Self {
        QuadraticForm {
            m: vec![vec![Rational::zero(); n]; n],
        }
    }

    /// Adds `c · x_i x_j` (split symmetrically when `i ≠ j`).
    pub fn add_monomial(&mut self, i: usize, j: usize, c: &Rational) {
        if i == j {
            self.m[i][i] += c;
        } else {
            let half = c / Rational::from_integer(BigInt::from(2));
            self.m[i][j] += &half;
            self.m[j][i] += &half;
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of `x_i x_j` in the expanded polynomial.
    pub fn coefficient(&self, i: usize, j: usize) -> Rational {
        if i == j {
            self.m[i][i].clone()
        } else {
            &self.m[i][j] + &self.m[j][i]
        }
    }

    /// `B(x, y) = xᵀMy`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                acc += &self.m[i][j] * xi * yj;
            }
        }
        acc
    }

    /// `Q(x + y) − Q(x) − Q(y)`.
    pub fn coefficient_between(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.bilinear(x, y) + self.bilinear(y, x)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.bilinear(x, x)
    }

    /// Exact value at a vector with field entries.
    pub fn eval_field(&self, x: &[FieldElement]) -> FieldElement {
        let desc = x[0].descriptor();
        let mut acc = FieldElement::zero(desc);
        for i in 0..x.len() {
            for j in i..x.len() {
                let c = self.coefficient(i, j);
                if !c.is_zero() {
                    acc += &(&x[i] * &x[j]).scale(&c);
                }
            }
        }
        acc
    }

    /// The form `t ↦ Q(Σ tₖ bₖ)` on the span of `basis`.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> QuadraticForm {
        let k = basis.len();
        let mut out = QuadraticForm::zero(k);
        for a in 0..k {
            for b in 0..k {
                out.m[a][b] = self.bilinear(&basis[a], &basis[b]);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> QuadraticForm {
        QuadraticForm {
            m: self
                .m
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Whether `self = c · other` for some rational `c` (including zero).
    pub fn proportional_to(&self, other: &QuadraticForm) -> bool {
        let a = self.m.iter().flatten();
        let b = other.m.iter().flatten();
        let pairs: Vec<_> = a.zip(b).collect();
        pairs
            .iter()
            .all(|(x, y)| pairs.iter().all(|(z, w)| *x * *w == *z * *y))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let c = self.coefficient(i, j);
                if !c.is_zero() {
                    list.entry(&format_args!("{}·x{}x{}", rational::to_string(&c), i, j));
                }
            }
        }
        list.finish()
    }
}

/// Whether two ternary quadratic forms have finitely many common projective
/// zeros over the algebraic closure, i.e. share no common component.
///
/// Coordinates are changed so that the first form has a nonzero `x₀²`
/// coefficient, then the resultant in `x₀` (with `x₂ = 1`) is tested for
/// being identically zero.
pub fn ternary_finite_intersection(q1: &QuadraticForm, q2: &QuadraticForm) -> bool {
    assert!(q1.dim() == 3 && q2.dim() == 3, "ternary forms expected");
    if q1.is_zero() || q2.is_zero() {
        return false;
    }
    let (q1, q2) = match pivot_basis(q1) {
        Some(b) => (q1.restrict(&b), q2.restrict(&b)),
        None => return false,
    };
    // Q = c00 x0² + (c01 x1 + c02) x0 + (c11 x1² + c12 x1 + c22)
    let split = |q: &QuadraticForm| -> [Poly; 3] {
        let c = |i, j| q.coefficient(i, j);
        [
            Poly::new(vec![c(2, 2), c(1, 2), c(1, 1)]),
            Poly::new(vec![c(0, 2), c(0, 1)]),
            Poly::constant(c(0, 0)),
        ]
    };
    let [a0, a1, a2] = split(&q1);
    let [b0, b1, b2] = split(&q2);
    !quadratic_resultant([&a0, &a1, &a2], [&b0, &b1, &b2]).is_zero()
}

/// A basis `{p, e, e'}` of Q³ with `Q(p) ≠ 0`, or `None` if `Q` vanishes.
fn pivot_basis(q: &QuadraticForm) -> Option<Vec<Vec<Rational>>> {
    let r = |v: [i64; 3]| -> Vec<Rational> { v.iter().map(|&x| rational::rat(x)).collect() };
    let candidates = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
    ];
    let p = candidates.into_iter().find(|&c| !q.eval(&r(c)).is_zero())?;
    let k = p.iter().position(|&x| x != 0).expect("nonzero candidate");
    let mut basis = vec![r(p)];
    for e in (0..3).filter(|&e| e != k) {
        let mut v = [0; 3];
        v[e] = 1;
        basis.push(r(v));
    }
    Some(basis)
}
