//! Exact linear algebra over Q, and rational kernels of matrices over a
//! multi-quadratic field.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{primitive_integer_vector, Rational};
use super::FieldElement;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x ∈ Qⁿ : Mx = 0}` read off the reduced echelon form: one vector
/// per free column, with a 1 in that column.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in work.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Primitive integer basis of the rational kernel of a matrix of integer
/// rows.
pub fn integer_rows_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    nullspace(&m, cols)
        .iter()
        .map(|v| primitive_integer_vector(v))
        .collect()
}

pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    rank(&m)
}

/// Splits every entry of a field matrix into its rational components,
/// stacking one rational row per (row, monomial).
pub fn split_components(m: &[Vec<FieldElement>]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for row in m {
        let Some(first) = row.first() else { continue };
        for k in 0..first.descriptor().degree() {
            out.push(row.iter().map(|x| x.coeffs()[k].clone()).collect());
        }
    }
    out
}

/// Basis over Q of `{v ∈ Qⁿ : Mv = 0}` for an `m × n` matrix over a
/// multi-quadratic field.
///
/// The returned vectors are primitive integer vectors (coprime entries, first
/// nonzero entry positive), taken from the reduced echelon form so the basis
/// is canonical.
pub fn rational_kernel(m: &[Vec<FieldElement>], cols: usize) -> Vec<Vec<BigInt>> {
    let stacked = split_components(m);
    nullspace(&stacked, cols)
        .iter()
        .map(|v| primitive_integer_vector(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;
    use crate::field::FieldDescriptor;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_one_sqrt2_one() {
        let q2 = FieldDescriptor::quadratic(2).unwrap();
        let row = vec![
            FieldElement::one(q2),
            FieldElement::sqrt_radicand(q2, 0),
            FieldElement::one(q2),
        ];
        assert_eq!(rational_kernel(&[row], 3), vec![ints(&[1, 0, -1])]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let q = FieldDescriptor::RATIONAL;
        let id: Vec<Vec<FieldElement>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| FieldElement::from_int(q, (i == j) as i64))
                    .collect()
            })
            .collect();
        assert!(rational_kernel(&id, 3).is_empty());
        let zero = vec![vec![FieldElement::zero(q); 3]];
        assert_eq!(rational_kernel(&zero, 3).len(), 3);
    }

    #[test]
    fn rank_and_rref() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &m {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(integer_rows_kernel(&[ints(&[2, -4, 6])], 3).len(), 2);
    }
}
