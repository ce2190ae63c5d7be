//! Helpers around [`BigRational`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `"p/q"`, denominator always present.
pub fn to_string(q: &Rational) -> String {
    let mut s = q.numer().to_string();
    s.push('/');
    s.push_str(&q.denom().to_string());
    s
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).ok()?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let numer = if negative { -magnitude } else { magnitude };
        return Some(Rational::new(numer, scale));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

pub fn to_f64(q: &Rational) -> f64 {
    if let Some(x) = q.to_f64() {
        return x;
    }
    // Huge numerators or denominators: scale both down first.
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(0.0);
    let d = (d >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Largest integer not above `q`.
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Scales a rational vector to the primitive integer vector on the same ray:
/// coprime entries, first nonzero entry positive. The zero vector maps to
/// itself.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in v {
        lcm = lcm.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let flip = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    ints
}

/// Largest square dividing `n` (positive) and the squarefree cofactor:
/// `n = s² · d`.
pub fn square_free_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square_free_decomposition needs n > 0");
    let mut rest = n.clone();
    let mut square_root = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square_root *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    (square_root, rest)
}

/// Writes a positive rational as `s² · d` with `s` rational and `d` a
/// squarefree positive integer.
pub fn rational_square_free(q: &Rational) -> (Rational, BigInt) {
    assert!(q.is_positive());
    // p/q = p·q / q²
    let pq = q.numer() * q.denom();
    let (s, d) = square_free_decomposition(&pq);
    (Rational::new(s, q.denom().clone()), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3"), Some(rat(3)));
        assert_eq!(parse(" -6/4 "), Some(ratio(-3, 2)));
        assert_eq!(parse("0.125"), Some(ratio(1, 8)));
        assert_eq!(parse("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(to_string(&ratio(-6, 4)), "-3/2");
        assert_eq!(to_string(&rat(5)), "5/1");
    }

    #[test]
    fn primitive_vectors() {
        let v = [ratio(-1, 2), rat(0), ratio(3, 4)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, [BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
        let z = primitive_integer_vector(&[rat(0), rat(0)]);
        assert!(z.iter().all(Zero::is_zero));
    }

    #[test]
    fn square_free_parts() {
        let (s, d) = square_free_decomposition(&BigInt::from(72));
        assert_eq!((s, d), (BigInt::from(6), BigInt::from(2)));
        let (s, d) = rational_square_free(&ratio(8, 3));
        // 8/3 = (2/3)² · 6
        assert_eq!(s, ratio(2, 3));
        assert_eq!(d, BigInt::from(6));
        assert_eq!(floor(&ratio(-7, 2)), BigInt::from(-4));
    }
}
