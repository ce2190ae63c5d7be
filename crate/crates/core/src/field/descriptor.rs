use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Which multi-quadratic field Q(√d₁, √d₂) an element lives in.
///
/// Zero, one or two squarefree radicands `≥ 2`. The monomial basis is
/// `1, √d₁, √d₂, √d₁·√d₂`, truncated to `2^k` entries for `k` radicands.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    radicands: [u64; 2],
    len: u8,
}

const MAX_RADICAND: u64 = 1 << 31;

impl FieldDescriptor {
    pub const RATIONAL: FieldDescriptor = FieldDescriptor {
        radicands: [0, 0],
        len: 0,
    };

    pub fn new(radicands: &[i64]) -> Result<Self> {
        if radicands.len() > 2 {
            return Err(Error::InvalidDescriptor(
                "at most two radicands are supported",
            ));
        }
        let mut out = [0u64; 2];
        for (slot, &d) in out.iter_mut().zip(radicands) {
            if d < 2 {
                return Err(Error::InvalidDescriptor("radicands must be at least 2"));
            }
            let d = d as u64;
            if d > MAX_RADICAND {
                return Err(Error::InvalidDescriptor("radicand too large"));
            }
            if !is_squarefree(d) {
                return Err(Error::InvalidDescriptor("radicands must be squarefree"));
            }
            *slot = d;
        }
        if radicands.len() == 2 {
            if out[0] == out[1] {
                return Err(Error::InvalidDescriptor("radicands must be distinct"));
            }
            if is_square(out[0] * out[1]) {
                return Err(Error::InvalidDescriptor("product of radicands is a square"));
            }
        }
        Ok(FieldDescriptor {
            radicands: out,
            len: radicands.len() as u8,
        })
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(&[d])
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands[..self.len as usize]
    }

    /// Number of radicands `k`.
    pub fn rank(&self) -> usize {
        self.len as usize
    }

    /// Dimension `2^k` of the field over Q.
    pub fn degree(&self) -> usize {
        1 << self.len
    }

    pub fn is_rational(&self) -> bool {
        self.len == 0
    }

    /// Value of the squared basis monomial with index `i` (bit 0 is √d₁,
    /// bit 1 is √d₂).
    pub(crate) fn monomial_square(&self, i: usize) -> u64 {
        let mut out = 1;
        for (bit, d) in self.radicands().iter().enumerate() {
            if i & (1 << bit) != 0 {
                out *= d;
            }
        }
        out
    }

    /// Squarefree radicand of the basis monomial `i` (so √d₁d₂ for
    /// `i = 3` reduces to √(d₁d₂/g²) up to the rational factor `g`).
    pub(crate) fn monomial_radicand(&self, i: usize) -> (u64, u64) {
        let n = self.monomial_square(i);
        let mut s = 1;
        let mut d = n;
        let mut p = 2;
        while p * p <= d {
            while d.is_multiple_of(p * p) {
                d /= p * p;
                s *= p;
            }
            p += 1;
        }
        (s, d)
    }

    /// Smallest descriptor containing both fields, when it fits in two
    /// radicands.
    pub fn join(&self, other: &FieldDescriptor) -> Option<FieldDescriptor> {
        let mut rads: Vec<i64> = self.radicands().iter().map(|&d| d as i64).collect();
        for &d in other.radicands() {
            if self.contains_sqrt(d) {
                continue;
            }
            rads.push(d as i64);
        }
        FieldDescriptor::new(&rads).ok()
    }

    /// Whether √d (d squarefree) is one of the basis monomials up to a
    /// rational factor.
    pub fn contains_sqrt(&self, d: u64) -> bool {
        d == 1 || (1..self.degree()).any(|i| self.monomial_radicand(i).1 == d)
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn is_square(n: u64) -> bool {
    let r = libm::sqrt(n as f64) as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicands() {
            [] => write!(f, "Q"),
            [d] => write!(f, "Q(√{d})"),
            [a, b] => write!(f, "Q(√{a},√{b})"),
            _ => unreachable!(),
        }
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FieldDescriptor::new(&[2]).is_ok());
        assert!(FieldDescriptor::new(&[2, 3]).is_ok());
        assert!(FieldDescriptor::new(&[4]).is_err());
        assert!(FieldDescriptor::new(&[1]).is_err());
        assert!(FieldDescriptor::new(&[-3]).is_err());
        assert!(FieldDescriptor::new(&[2, 2]).is_err());
        assert!(FieldDescriptor::new(&[2, 3, 5]).is_err());
        assert_eq!(FieldDescriptor::new(&[2, 3]).unwrap().degree(), 4);
    }

    #[test]
    fn monomials() {
        let f = FieldDescriptor::new(&[6, 10]).unwrap();
        assert_eq!(f.monomial_square(3), 60);
        // √60 = 2√15
        assert_eq!(f.monomial_radicand(3), (2, 15));
        assert!(f.contains_sqrt(15));
        assert!(!f.contains_sqrt(5));
        let j = FieldDescriptor::quadratic(2)
            .unwrap()
            .join(&FieldDescriptor::quadratic(3).unwrap());
        assert_eq!(j, FieldDescriptor::new(&[2, 3]).ok());
    }
}
