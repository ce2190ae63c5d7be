//! Two-planes in R⁴ and their Grassmann coordinates.

use alloc::vec::Vec;
use core::array;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::{self, linalg, FieldDescriptor, FieldElement, Rational, Vec4};
use crate::{Error, Result};

/// Index pairs `(i, j)`, 0-based, in lexicographic order
/// `12, 13, 14, 23, 24, 34`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const PAIR_LABELS: [&str; 6] = ["12", "13", "14", "23", "24", "34"];

/// Position of the pair `{i, j}` (0-based, `i ≠ j`) in [`PAIRS`].
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .expect("pair indices must differ")
}

/// An affine 2-plane `offset + span(u, v)` of R⁴.
///
/// The direction carries the field; the offset is rational so that window
/// membership stays decidable in the same field.
#[derive(Clone, Debug, PartialEq)]
pub struct Slope {
    desc: FieldDescriptor,
    u: Vec4,
    v: Vec4,
    offset: [Rational; 4],
}

impl Slope {
    pub fn new(u: Vec4, v: Vec4, offset: [Rational; 4]) -> Result<Self> {
        let desc = u[0].descriptor();
        for x in u.iter().chain(v.iter()) {
            if x.descriptor() != desc {
                return Err(Error::DescriptorMismatch(desc, x.descriptor()));
            }
        }
        let slope = Slope { desc, u, v, offset };
        if slope.minors().iter().all(FieldElement::is_zero) {
            return Err(Error::DependentBasis);
        }
        Ok(slope)
    }

    pub fn through_origin(u: Vec4, v: Vec4) -> Result<Self> {
        Self::new(u, v, array::from_fn(|_| Rational::zero()))
    }

    /// Same direction, different translation.
    pub fn with_offset(&self, offset: [Rational; 4]) -> Slope {
        Slope {
            offset,
            ..self.clone()
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn u(&self) -> &Vec4 {
        &self.u
    }

    pub fn v(&self) -> &Vec4 {
        &self.v
    }

    pub fn offset(&self) -> &[Rational; 4] {
        &self.offset
    }

    /// The six 2×2 minors `u_i v_j − u_j v_i` of the basis, unnormalized.
    pub fn minors(&self) -> [FieldElement; 6] {
        PAIRS.map(|(i, j)| &self.u[i] * &self.v[j] - &self.u[j] * &self.v[i])
    }

    /// Normalized Grassmann coordinates.
    pub fn grassmann(&self) -> GrassmannCoords {
        let g = GrassmannCoords {
            g: self.minors(),
            normalized: false,
        };
        debug_assert!(g.plucker_residual().is_zero());
        g.normalized()
    }

    /// Basis over Q of the rational vectors lying in the direction of the
    /// plane. Empty exactly when the plane is irrational.
    pub fn rational_subspace(&self) -> Vec<[BigInt; 4]> {
        self.grassmann().rational_subspace()
    }

    pub fn is_irrational(&self) -> bool {
        self.rational_subspace().is_empty()
    }

    /// Whether `w` lies in the direction `span(u, v)`.
    pub fn contains_direction(&self, w: &Vec4) -> bool {
        let g = self.minors();
        triple_forms(&g)
            .iter()
            .all(|row| field::dot4(row, w).is_zero())
    }

    /// Solves `w = λu + μv` from two coordinates `i, j` with `G_ij ≠ 0`.
    pub(crate) fn coefficients_from(
        &self,
        i: usize,
        j: usize,
        wi: &FieldElement,
        wj: &FieldElement,
    ) -> Option<(FieldElement, FieldElement)> {
        let det = &self.u[i] * &self.v[j] - &self.u[j] * &self.v[i];
        let inv = det.inv().ok()?;
        let lambda = (wi * &self.v[j] - wj * &self.v[i]) * &inv;
        let mu = (&self.u[i] * wj - &self.u[j] * wi) * &inv;
        Some((lambda, mu))
    }

    pub(crate) fn combine(&self, lambda: &FieldElement, mu: &FieldElement) -> Vec4 {
        array::from_fn(|k| lambda * &self.u[k] + mu * &self.v[k])
    }
}

/// The four linear forms `x_i G_jk − x_j G_ik + x_k G_ij` (one per triple
/// `i < j < k`), whose common kernel is the direction of the plane.
fn triple_forms(g: &[FieldElement; 6]) -> [Vec4; 4] {
    let desc = g[0].descriptor();
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    triples.map(|(i, j, k)| {
        let mut row = field::zero4(desc);
        row[i] = g[pair_index(j, k)].clone();
        row[j] = -&g[pair_index(i, k)];
        row[k] = g[pair_index(i, j)].clone();
        row
    })
}

/// The six Grassmann coordinates `G12, G13, G14, G23, G24, G34` of a plane,
/// defined up to a common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannCoords {
    g: [FieldElement; 6],
    normalized: bool,
}

impl GrassmannCoords {
    /// Validates the Plücker relation and that some coordinate is nonzero.
    pub fn new(g: [FieldElement; 6]) -> Result<Self> {
        let desc = g[0].descriptor();
        if let Some(x) = g.iter().find(|x| x.descriptor() != desc) {
            return Err(Error::DescriptorMismatch(desc, x.descriptor()));
        }
        if g.iter().all(FieldElement::is_zero) {
            return Err(Error::DependentBasis);
        }
        let out = GrassmannCoords {
            g,
            normalized: false,
        };
        if !out.plucker_residual().is_zero() {
            return Err(Error::PluckerViolated);
        }
        Ok(out)
    }

    /// Convenience constructor from integer coordinates over `desc`.
    pub fn from_ints(desc: FieldDescriptor, g: [i64; 6]) -> Result<Self> {
        Self::new(g.map(|x| FieldElement::from_int(desc, x)))
    }

    /// Divides by the first nonzero coordinate in lexicographic order.
    pub fn normalized(self) -> Self {
        if self.normalized {
            return self;
        }
        let lead = self
            .g
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero coordinates");
        let inv = lead.inv().expect("nonzero lead");
        GrassmannCoords {
            g: self.g.each_ref().map(|x| x * &inv),
            normalized: true,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.g[0].descriptor()
    }

    pub fn coords(&self) -> &[FieldElement; 6] {
        &self.g
    }

    /// `G_ij` for 0-based `i, j`, extended antisymmetrically.
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        let x = &self.g[pair_index(i, j)];
        if i < j {
            x.clone()
        } else {
            -x
        }
    }

    /// `G12·G34 − G13·G24 + G14·G23`.
    pub fn plucker_residual(&self) -> FieldElement {
        plucker(&self.g)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.g.iter().all(|x| !x.is_zero())
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        match self.g.iter().position(FieldElement::is_zero) {
            Some(k) => Err(Error::Degenerate(PAIR_LABELS[k])),
            None => Ok(()),
        }
    }

    /// Rational vectors in the plane, as the rational kernel of
    /// [`triple_forms`].
    pub fn rational_subspace(&self) -> Vec<[BigInt; 4]> {
        let rows: Vec<Vec<FieldElement>> =
            triple_forms(&self.g).into_iter().map(Vec::from).collect();
        linalg::rational_kernel(&rows, 4)
            .into_iter()
            .map(|v| array::from_fn(|i| v[i].clone()))
            .collect()
    }

    /// A basis of the plane: `u = (0, G12, G13, G14)`,
    /// `v = (−G12, 0, G23, G24)`, whose minors are `G12 · g`.
    pub fn plane_from_grassmann(&self) -> Result<Slope> {
        self.require_nondegenerate()?;
        if !self.plucker_residual().is_zero() {
            return Err(Error::PluckerViolated);
        }
        let desc = self.descriptor();
        let z = FieldElement::zero(desc);
        let g = &self.g;
        let u = [z.clone(), g[0].clone(), g[1].clone(), g[2].clone()];
        let v = [-&g[0], z, g[3].clone(), g[4].clone()];
        Slope::through_origin(u, v)
    }

    /// Distinct entrywise conjugates, starting with `self`.
    pub fn conjugate_slopes(&self) -> Vec<GrassmannCoords> {
        let mut out: Vec<GrassmannCoords> = Vec::new();
        for mask in 0..self.descriptor().degree() {
            let c = GrassmannCoords {
                g: self.g.each_ref().map(|x| x.conjugate(mask)),
                normalized: self.normalized,
            };
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Same coordinates expressed in a larger field.
    pub fn embed(&self, target: FieldDescriptor) -> Option<GrassmannCoords> {
        let mut g = Vec::with_capacity(6);
        for x in &self.g {
            g.push(x.embed(target)?);
        }
        Some(GrassmannCoords {
            g: array::from_fn(|i| g[i].clone()),
            normalized: self.normalized,
        })
    }

    /// Whether both coordinate vectors define the same projective point,
    /// possibly across different fields.
    pub fn same_point(&self, other: &GrassmannCoords) -> bool {
        let Some(target) = self.descriptor().join(&other.descriptor()) else {
            return false;
        };
        let (Some(a), Some(b)) = (self.embed(target), other.embed(target)) else {
            return false;
        };
        (0..6).all(|i| (0..6).all(|j| (&a.g[i] * &b.g[j] - &a.g[j] * &b.g[i]).is_zero()))
    }
}

/// The Ammann–Beenker slope, spanned by `(√2, 1, 0, −1)` and
/// `(0, 1, √2, 1)`.
pub fn ammann_beenker() -> Slope {
    let q = FieldDescriptor::quadratic(2).expect("valid radicand");
    let e = |a: i64, b: i64| {
        FieldElement::from_coeffs(
            q,
            alloc::vec![
                Rational::from_integer(a.into()),
                Rational::from_integer(b.into())
            ],
        )
        .expect("two coefficients")
    };
    Slope::through_origin(
        [e(0, 1), e(1, 0), e(0, 0), e(-1, 0)],
        [e(0, 0), e(1, 0), e(0, 1), e(1, 0)],
    )
    .expect("independent basis")
}

/// The plane with Grassmann coordinates `(1, √2, √3, 2√2, 3√3, √6)`, which
/// has one subperiod of type 3 and one of type 4.
pub fn biquadratic_example() -> Slope {
    let q = FieldDescriptor::new(&[2, 3]).expect("valid radicands");
    let e = |c: [i64; 4]| {
        FieldElement::from_coeffs(
            q,
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
        .expect("four coefficients")
    };
    GrassmannCoords::new([
        e([1, 0, 0, 0]),
        e([0, 1, 0, 0]),
        e([0, 0, 1, 0]),
        e([0, 2, 0, 0]),
        e([0, 0, 3, 0]),
        e([0, 0, 0, 1]),
    ])
    .and_then(|g| g.plane_from_grassmann())
    .expect("nondegenerate Plücker point")
}

pub(crate) fn plucker(g: &[FieldElement; 6]) -> FieldElement {
    &g[0] * &g[5] - &g[1] * &g[4] + &g[2] * &g[3]
}
