//! Subperiods: integer linear relations among the three Grassmann
//! coordinates that avoid one index.
//!
//! A type `k` subperiod with coefficients `(p, q, r)` on the pairs without
//! `k` (in lexicographic order) corresponds to a direction of the plane whose
//! three entries other than `k` are integers. For `k = 4` the relation
//! `p·G12 + q·G13 + r·G23 = 0` matches the direction `(r, −q, p, x)`.

use alloc::vec::Vec;
use core::array;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{linalg, FieldElement, Vec4};
use crate::slope::{pair_index, GrassmannCoords, Slope, PAIR_LABELS};
use crate::{Error, Result};

/// Positions in `G12..G34` of the coordinates avoiding index `k` (1-based
/// `k`, stored at `k − 1`).
pub const TYPE_PAIRS: [[usize; 3]; 4] = [[3, 4, 5], [1, 2, 5], [0, 2, 4], [0, 1, 3]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subperiod {
    kind: usize,
    coeffs: [BigInt; 3],
    lift: Option<Vec4>,
}

impl Subperiod {
    /// A relation of type `kind ∈ 1..=4` on the coordinates
    /// [`TYPE_PAIRS`]`[kind − 1]`. Coefficients are normalized to a primitive
    /// vector with positive leading entry.
    pub fn new(kind: usize, coeffs: [i64; 3]) -> Result<Self> {
        Self::from_bigints(kind, coeffs.map(BigInt::from))
    }

    pub fn from_bigints(kind: usize, coeffs: [BigInt; 3]) -> Result<Self> {
        if !(1..=4).contains(&kind) {
            return Err(Error::InvalidParameter("subperiod type must be in 1..=4"));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter(
                "subperiod coefficients are all zero",
            ));
        }
        let q: Vec<_> = coeffs
            .iter()
            .map(|c| crate::field::Rational::from_integer(c.clone()))
            .collect();
        let p = crate::field::rational::primitive_integer_vector(&q);
        Ok(Subperiod {
            kind,
            coeffs: array::from_fn(|i| p[i].clone()),
            lift: None,
        })
    }

    pub fn kind(&self) -> usize {
        self.kind
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.coeffs
    }

    pub fn pair_labels(&self) -> [&'static str; 3] {
        TYPE_PAIRS[self.kind - 1].map(|p| PAIR_LABELS[p])
    }

    pub fn lift(&self) -> Option<&Vec4> {
        self.lift.as_ref()
    }

    pub fn with_lift(mut self, lift: Vec4) -> Self {
        self.lift = Some(lift);
        self
    }

    /// The relation as a row acting on `(G12, G13, G14, G23, G24, G34)`.
    pub fn linear_form(&self) -> [BigInt; 6] {
        let mut row: [BigInt; 6] = array::from_fn(|_| BigInt::zero());
        for (c, &p) in self.coeffs.iter().zip(&TYPE_PAIRS[self.kind - 1]) {
            row[p] = c.clone();
        }
        row
    }

    pub fn evaluate(&self, g: &GrassmannCoords) -> FieldElement {
        evaluate_form(&self.linear_form(), g.coords())
    }

    /// The direction's integer entries, with 0 at position `k`.
    pub fn integer_entries(&self) -> [BigInt; 4] {
        let k = self.kind - 1;
        let [i, j, l] = complement(k);
        let [c_ij, c_il, c_jl] = self.coeffs.clone();
        debug_assert_eq!(
            TYPE_PAIRS[k],
            [pair_index(i, j), pair_index(i, l), pair_index(j, l)]
        );
        let mut w: [BigInt; 4] = array::from_fn(|_| BigInt::zero());
        w[i] = c_jl;
        w[j] = -c_il;
        w[l] = c_ij;
        w
    }
}

pub(crate) fn evaluate_form(form: &[BigInt; 6], g: &[FieldElement; 6]) -> FieldElement {
    let mut acc = FieldElement::zero(g[0].descriptor());
    for (c, x) in form.iter().zip(g) {
        if !c.is_zero() {
            acc += &x.scale_int(c);
        }
    }
    acc
}

/// The three indices other than `k`, increasing.
pub(crate) fn complement(k: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for i in (0..4).filter(|&i| i != k) {
        out[n] = i;
        n += 1;
    }
    out
}

/// All subperiods of a nondegenerate plane, by type, each type's relations
/// given as the reduced echelon basis of its rational relation space.
pub fn find_subperiods(g: &GrassmannCoords) -> Result<Vec<Subperiod>> {
    g.require_nondegenerate()?;
    let mut out = Vec::new();
    for kind in 1..=4 {
        let row: Vec<FieldElement> = TYPE_PAIRS[kind - 1]
            .iter()
            .map(|&p| g.coords()[p].clone())
            .collect();
        for v in linalg::rational_kernel(&[row], 3) {
            out.push(Subperiod {
                kind,
                coeffs: array::from_fn(|i| v[i].clone()),
                lift: None,
            });
        }
    }
    Ok(out)
}

/// The direction of the plane whose entries off position `k` are the
/// subperiod's integers; the entry at `k` is a field element.
pub fn lift_subperiod(s: &Slope, sp: &Subperiod) -> Result<Vec4> {
    let desc = s.descriptor();
    let k = sp.kind - 1;
    let [i, j, l] = complement(k);
    let w = sp
        .integer_entries()
        .map(|x| FieldElement::from_bigint(desc, &x));
    // Any two of the three prescribed entries determine the combination
    // when their minor is nonzero.
    let (a, b) = [(i, j), (i, l), (j, l)]
        .into_iter()
        .find(|&(a, b)| !s.minors()[pair_index(a, b)].is_zero())
        .ok_or(Error::Degenerate("of the subperiod's pairs"))?;
    let (lambda, mu) = s
        .coefficients_from(a, b, &w[a], &w[b])
        .ok_or(Error::NotASubperiod)?;
    let lift = s.combine(&lambda, &mu);
    for &t in &[i, j, l] {
        if lift[t] != w[t] {
            return Err(Error::NotASubperiod);
        }
    }
    Ok(lift)
}

/// Subperiods of a slope with their lifts attached.
pub fn analyze(s: &Slope) -> Result<Vec<Subperiod>> {
    let g = s.grassmann();
    find_subperiods(&g)?
        .into_iter()
        .map(|sp| {
            let lift = lift_subperiod(s, &sp)?;
            Ok(sp.with_lift(lift))
        })
        .collect()
}

/// Number of distinct subperiod types present.
pub fn count_types(subperiods: &[Subperiod]) -> usize {
    (1..=4)
        .filter(|k| subperiods.iter().any(|s| s.kind == *k))
        .count()
}

/// Subperiods of a given type.
pub fn of_type(subperiods: &[Subperiod], kind: usize) -> Vec<&Subperiod> {
    subperiods.iter().filter(|s| s.kind == kind).collect()
}
