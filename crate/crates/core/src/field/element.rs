use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::FieldDescriptor;
use crate::{Error, Result};

/// An exact element of Q(√d₁, √d₂), stored on the monomial basis.
///
/// Coefficients are reduced rationals, so equality of two elements with the
/// same descriptor is a componentwise comparison.
///
/// The arithmetic operators panic when the descriptors differ; use the
/// `try_*` methods when that can legitimately happen.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    desc: FieldDescriptor,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(desc: FieldDescriptor) -> Self {
        FieldElement {
            desc,
            coeffs: vec![Rational::zero(); desc.degree()],
        }
    }

    pub fn one(desc: FieldDescriptor) -> Self {
        Self::from_rational(desc, Rational::one())
    }

    pub fn from_rational(desc: FieldDescriptor, q: Rational) -> Self {
        let mut out = Self::zero(desc);
        out.coeffs[0] = q;
        out
    }

    pub fn from_int(desc: FieldDescriptor, n: i64) -> Self {
        Self::from_rational(desc, rational::rat(n))
    }

    pub fn from_bigint(desc: FieldDescriptor, n: &BigInt) -> Self {
        Self::from_rational(desc, Rational::from_integer(n.clone()))
    }

    /// Builds an element from its `2^k` monomial coefficients.
    pub fn from_coeffs(desc: FieldDescriptor, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != desc.degree() {
            return Err(Error::CoefficientCount {
                expected: desc.degree(),
                found: coeffs.len(),
            });
        }
        Ok(FieldElement { desc, coeffs })
    }

    /// `√dᵢ` for the radicand with index `i` (0 or 1).
    pub fn sqrt_radicand(desc: FieldDescriptor, i: usize) -> Self {
        assert!(i < desc.rank(), "radicand index out of range");
        let mut out = Self::zero(desc);
        out.coeffs[1 << i] = Rational::one();
        out
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// The rational value, if the element is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.desc == other.desc {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.desc, other.desc))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            desc: self.desc,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            desc: self.desc,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let x = &self.coeffs;
        let y = &other.coeffs;
        let coeffs = match self.desc.rank() {
            0 => vec![&x[0] * &y[0]],
            1 => {
                let d = rational::rat(self.desc.radicands()[0] as i64);
                vec![
                    &x[0] * &y[0] + &x[1] * &y[1] * d,
                    &x[0] * &y[1] + &x[1] * &y[0],
                ]
            }
            _ => {
                let rads = self.desc.radicands();
                let d1 = rational::rat(rads[0] as i64);
                let d2 = rational::rat(rads[1] as i64);
                let d12 = &d1 * &d2;
                vec![
                    &x[0] * &y[0]
                        + &x[1] * &y[1] * &d1
                        + &x[2] * &y[2] * &d2
                        + &x[3] * &y[3] * &d12,
                    &x[0] * &y[1] + &x[1] * &y[0] + (&x[2] * &y[3] + &x[3] * &y[2]) * &d2,
                    &x[0] * &y[2] + &x[2] * &y[0] + (&x[1] * &y[3] + &x[3] * &y[1]) * &d1,
                    &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] + &x[2] * &y[1],
                ]
            }
        };
        Ok(FieldElement {
            desc: self.desc,
            coeffs,
        })
    }

    /// Multiplicative inverse, as the product of the nontrivial conjugates
    /// divided by the (rational) norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut others = Self::one(self.desc);
        for mask in 1..self.desc.degree() {
            others = &others * &self.conjugate(mask);
        }
        let norm = (self * &others).coeffs[0].clone();
        debug_assert!(!norm.is_zero());
        Ok(others.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            desc: self.desc,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        if n.is_one() {
            return self.clone();
        }
        FieldElement {
            desc: self.desc,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale_int(&BigInt::from(n))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Image under the automorphism flipping the sign of `√dᵢ` for every bit
    /// `i` set in `mask`.
    pub fn conjugate(&self, mask: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (i & mask).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            desc: self.desc,
            coeffs,
        }
    }

    /// All `2^k` images under sign flips of the radicals. The first entry is
    /// the element itself; mask bit 0 flips √d₁, bit 1 flips √d₂.
    pub fn conjugations(&self) -> Vec<FieldElement> {
        (0..self.desc.degree()).map(|m| self.conjugate(m)).collect()
    }

    /// Exact sign of the real number under the embedding with all square
    /// roots positive.
    pub fn sign(&self) -> i32 {
        let c = &self.coeffs;
        match self.desc.rank() {
            0 => sign_q(&c[0]),
            1 => sign_quadratic(&c[0], &c[1], self.desc.radicands()[0]),
            _ => {
                let rads = self.desc.radicands();
                let (d1, d2) = (rads[0], rads[1]);
                // self = A + B√d₂ with A = c0 + c1√d₁, B = c2 + c3√d₁
                let sa = sign_quadratic(&c[0], &c[1], d1);
                let sb = sign_quadratic(&c[2], &c[3], d1);
                if sb == 0 {
                    return sa;
                }
                if sa == 0 || sa == sb {
                    return if sa == 0 { sb } else { sa };
                }
                let d1q = rational::rat(d1 as i64);
                let d2q = rational::rat(d2 as i64);
                // A² − d₂B² in Q(√d₁)
                let r0 = &c[0] * &c[0] + &c[1] * &c[1] * &d1q
                    - (&c[2] * &c[2] + &c[3] * &c[3] * &d1q) * &d2q;
                let r1 = (&c[0] * &c[1] - &c[2] * &c[3] * &d2q) * rational::rat(2);
                sa * sign_quadratic(&r0, &r1, d1)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Real comparison; panics on descriptor mismatch.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let mut diff = self.clone();
        diff.coeffs[0] -= q;
        diff.sign().cmp(&0)
    }

    /// Largest integer not above the element, decided exactly.
    pub fn floor(&self) -> BigInt {
        let guess = libm::floor(self.to_f64());
        let mut n = if guess.is_finite() {
            BigInt::from(guess as i64)
        } else {
            rational::floor(&self.coeffs[0])
        };
        while self.cmp_rational(&Rational::from_integer(n.clone())) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Floating point approximation, used only for rendering and as a
    /// filter in front of exact predicates.
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    0.0
                } else {
                    rational::to_f64(c) * libm::sqrt(self.desc.monomial_square(i) as f64)
                }
            })
            .sum()
    }

    /// Re-expresses the element in a larger field, when every monomial it
    /// uses exists there.
    pub fn embed(&self, target: FieldDescriptor) -> Option<FieldElement> {
        if target == self.desc {
            return Some(self.clone());
        }
        let mut out = FieldElement::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (s, d) = self.desc.monomial_radicand(i);
            let j = (0..target.degree()).find(|&j| target.monomial_radicand(j).1 == d)?;
            let (sj, _) = target.monomial_radicand(j);
            out.coeffs[j] += c * Rational::new(BigInt::from(s), BigInt::from(sj));
        }
        Some(out)
    }

    /// Smallest descriptor (among the subfields spanned by the monomials)
    /// in which this element can be written.
    pub fn minimal_descriptor(&self) -> FieldDescriptor {
        let used: Vec<u64> = (1..self.desc.degree())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| self.desc.monomial_radicand(i).1)
            .collect();
        let mut rads: Vec<i64> = Vec::new();
        for d in used {
            let candidate = FieldDescriptor::new(&rads.to_vec()).ok();
            if candidate.is_some_and(|c| c.contains_sqrt(d)) {
                continue;
            }
            rads.push(d as i64);
        }
        FieldDescriptor::new(&rads).unwrap_or(self.desc)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }
}

fn sign_q(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `a + b√d`.
fn sign_quadratic(a: &Rational, b: &Rational, d: u64) -> i32 {
    let sa = sign_q(a);
    let sb = sign_q(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    let diff = a * a - b * b * rational::rat(d as i64);
    sa * sign_q(&diff)
}

impl PartialOrd for FieldElement {
    /// Real order; `None` when the descriptors differ.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.desc == other.desc).then(|| self.cmp_real(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$try(rhs) {
                    Ok(x) => x,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        assert_eq!(self.desc, rhs.desc, "field descriptor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        assert_eq!(self.desc, rhs.desc, "field descriptor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            desc: self.desc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}·")?;
                }
                write!(f, "√{}", self.desc.monomial_square(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.desc)
    }
}
