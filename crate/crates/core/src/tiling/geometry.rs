//! Projections onto the slope and its orthogonal complement, the window,
//! and offset-specific membership tests.

use alloc::vec::Vec;
use core::array;
use core::cmp::Ordering;

use crate::field::rational::Rational;
use crate::field::{self, FieldDescriptor, FieldElement, Vec4};
use crate::slope::Slope;
use crate::Result;

/// A planar vector with exact coordinates.
pub type Vec2 = [FieldElement; 2];

pub(crate) fn sub2(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub(crate) fn add2(a: &Vec2, b: &Vec2) -> Vec2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub(crate) fn cross(a: &Vec2, b: &Vec2) -> FieldElement {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub(crate) fn cross_f(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Relative slack under which floating-point filters defer to exact
/// arithmetic.
pub(crate) const FILTER_EPS: f64 = 1e-7;

/// Orthogonal bases of the slope `E` and of `E^⊥`.
///
/// Coordinates along a basis vector `b` are the raw inner products `⟨x, b⟩`,
/// so they stay in the slope's field; the Euclidean metric is recovered with
/// the stored inverse squared norms.
#[derive(Clone, Debug)]
pub struct Frame {
    desc: FieldDescriptor,
    e: [Vec4; 2],
    e_inv: [FieldElement; 2],
    perp: [Vec4; 2],
    perp_inv: [FieldElement; 2],
    e_unit_f: [[f64; 4]; 2],
    perp_f: [[f64; 4]; 2],
}

fn gram_schmidt(a: &Vec4, b: &Vec4) -> Result<[Vec4; 2]> {
    let aa = field::dot4(a, a);
    let t = field::dot4(b, a).try_div(&aa)?;
    let b2 = array::from_fn(|k| &b[k] - &(&t * &a[k]));
    Ok([a.clone(), b2])
}

impl Frame {
    /// Requires a nondegenerate slope.
    pub fn new(s: &Slope) -> Result<Self> {
        s.grassmann().require_nondegenerate()?;
        let desc = s.descriptor();
        let g = s.minors();
        let z = FieldElement::zero(desc);
        // orthogonal to E by the vanishing of the triple forms (1,2,3) and (2,3,4)
        let f1 = [g[3].clone(), -&g[1], g[0].clone(), z.clone()];
        let f2 = [z, g[5].clone(), -&g[4], g[3].clone()];
        let e = gram_schmidt(s.u(), s.v())?;
        let perp = gram_schmidt(&f1, &f2)?;
        let inv = |b: &[Vec4; 2]| -> Result<[FieldElement; 2]> {
            Ok([
                field::dot4(&b[0], &b[0]).inv()?,
                field::dot4(&b[1], &b[1]).inv()?,
            ])
        };
        let e_inv = inv(&e)?;
        let perp_inv = inv(&perp)?;
        let e_unit_f = array::from_fn(|i| {
            let scale = libm::sqrt(e_inv[i].to_f64());
            array::from_fn(|k| e[i][k].to_f64() * scale)
        });
        let perp_f = array::from_fn(|i| array::from_fn(|k| perp[i][k].to_f64()));
        Ok(Frame {
            desc,
            e,
            e_inv,
            perp,
            perp_inv,
            e_unit_f,
            perp_f,
        })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn e_basis(&self) -> &[Vec4; 2] {
        &self.e
    }

    pub fn perp_basis(&self) -> &[Vec4; 2] {
        &self.perp
    }

    fn coords_int(&self, b: &[Vec4; 2], z: &[i64; 4]) -> Vec2 {
        array::from_fn(|i| {
            let mut acc = FieldElement::zero(self.desc);
            for k in 0..4 {
                if z[k] != 0 {
                    acc += &b[i][k].scale_i64(z[k]);
                }
            }
            acc
        })
    }

    fn coords_rat(&self, b: &[Vec4; 2], x: &[Rational; 4]) -> Vec2 {
        array::from_fn(|i| {
            let mut acc = FieldElement::zero(self.desc);
            for k in 0..4 {
                acc += &b[i][k].scale(&x[k]);
            }
            acc
        })
    }

    /// Raw coordinates of `π(z)` in `E`.
    pub fn e_coords(&self, z: &[i64; 4]) -> Vec2 {
        self.coords_int(&self.e, z)
    }

    pub fn e_coords_rational(&self, x: &[Rational; 4]) -> Vec2 {
        self.coords_rat(&self.e, x)
    }

    pub fn e_coords_field(&self, x: &Vec4) -> Vec2 {
        [field::dot4(x, &self.e[0]), field::dot4(x, &self.e[1])]
    }

    /// Raw coordinates of `π^⊥(z)`, used as window coordinates.
    pub fn perp_coords(&self, z: &[i64; 4]) -> Vec2 {
        self.coords_int(&self.perp, z)
    }

    pub fn perp_coords_rational(&self, x: &[Rational; 4]) -> Vec2 {
        self.coords_rat(&self.perp, x)
    }

    /// Euclidean inner product of two vectors given in raw `E` coordinates.
    pub fn e_dot(&self, a: &Vec2, b: &Vec2) -> FieldElement {
        &(&(&a[0] * &b[0]) * &self.e_inv[0]) + &(&(&a[1] * &b[1]) * &self.e_inv[1])
    }

    pub fn e_norm2(&self, a: &Vec2) -> FieldElement {
        self.e_dot(a, a)
    }

    /// Euclidean inner product in raw `E^⊥` coordinates.
    pub fn perp_dot(&self, a: &Vec2, b: &Vec2) -> FieldElement {
        &(&(&a[0] * &b[0]) * &self.perp_inv[0]) + &(&(&a[1] * &b[1]) * &self.perp_inv[1])
    }

    /// Orthonormal Euclidean coordinates of `π(x)`, approximately.
    pub fn e_point_f64(&self, x: [f64; 4]) -> [f64; 2] {
        array::from_fn(|i| (0..4).map(|k| x[k] * self.e_unit_f[i][k]).sum())
    }

    pub fn e_point(&self, z: &[i64; 4]) -> [f64; 2] {
        self.e_point_f64(z.map(|x| x as f64))
    }

    /// Approximate raw `E^⊥` coordinates.
    pub fn perp_point_f64(&self, x: [f64; 4]) -> [f64; 2] {
        array::from_fn(|i| (0..4).map(|k| x[k] * self.perp_f[i][k]).sum())
    }

    /// A vector orthogonal to `a` in `E`, in raw coordinates, turned
    /// counterclockwise.
    pub fn e_normal(&self, a: &Vec2) -> Vec2 {
        [-&(&a[1] * &self.e_inv[1]), &a[0] * &self.e_inv[0]]
    }

    /// Whether `|π(z)| ≤ r`, decided exactly near the circle.
    pub fn e_within(&self, z: &[i64; 4], r: &Rational) -> bool {
        let p = self.e_point(z);
        let d = libm::sqrt(p[0] * p[0] + p[1] * p[1]);
        let rf = crate::field::rational::to_f64(r);
        let eps = FILTER_EPS * (1.0 + rf);
        if d < rf - eps {
            return true;
        }
        if d > rf + eps {
            return false;
        }
        self.e_norm2(&self.e_coords(z)).cmp_rational(&(r * r)) != Ordering::Greater
    }

    /// Converts raw `E` coordinates to approximate Euclidean ones.
    pub fn e_euclidean(&self, a: &Vec2) -> [f64; 2] {
        array::from_fn(|i| a[i].to_f64() * libm::sqrt(self.e_inv[i].to_f64()))
    }
}

/// One pair of parallel window edges, as the slab
/// `lo ≤ λ(p) ≤ hi` with `λ(p) = cross(dir, p − base)`.
#[derive(Clone, Debug)]
struct Slab {
    dir: Vec2,
    lo: FieldElement,
    hi: FieldElement,
    /// Which bounding edge belongs to the half-open window.
    closed_hi: bool,
    coeffs: [FieldElement; 4],
    coeffs_f: [f64; 4],
    lo_f: f64,
    hi_f: f64,
}

impl Slab {
    fn contains_value(&self, v: &FieldElement) -> bool {
        let lo = v.cmp_real(&self.lo);
        let hi = v.cmp_real(&self.hi);
        if self.closed_hi {
            lo == Ordering::Greater && hi != Ordering::Greater
        } else {
            lo != Ordering::Less && hi == Ordering::Less
        }
    }
}

/// The projection of the unit hypercube onto `E^⊥`: an octagon for a
/// nondegenerate slope.
///
/// Boundary points are resolved half-open: a point belongs to the window when
/// moving it by an infinitesimal `(1, ε)` in window coordinates lands in the
/// interior.
#[derive(Clone, Debug)]
pub struct Window {
    gens: [Vec2; 4],
    base: Vec2,
    order: [usize; 4],
    vertices: Vec<Vec2>,
    slabs: [Slab; 4],
}

fn upward(v: &Vec2) -> bool {
    match v[1].sign() {
        0 => v[0].is_positive(),
        s => s > 0,
    }
}

impl Window {
    pub fn new(frame: &Frame) -> Self {
        let desc = frame.descriptor();
        let gens: [Vec2; 4] = array::from_fn(|k| {
            let mut e = [0; 4];
            e[k] = 1;
            frame.perp_coords(&e)
        });
        let flipped: [bool; 4] = array::from_fn(|k| !upward(&gens[k]));
        let up: [Vec2; 4] = array::from_fn(|k| {
            if flipped[k] {
                [-&gens[k][0], -&gens[k][1]]
            } else {
                gens[k].clone()
            }
        });
        let mut base = [FieldElement::zero(desc), FieldElement::zero(desc)];
        for k in (0..4).filter(|&k| flipped[k]) {
            base = add2(&base, &gens[k]);
        }
        let mut order = [0, 1, 2, 3];
        order.sort_by(|&a, &b| match cross(&up[a], &up[b]).sign() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        });
        let mut vertices = Vec::with_capacity(8);
        let mut p = base.clone();
        for &k in order.iter().chain(order.iter()) {
            vertices.push(p.clone());
            p = if vertices.len() <= 4 {
                add2(&p, &up[k])
            } else {
                sub2(&p, &up[k])
            };
        }
        let slabs = array::from_fn(|j| {
            let mut lo = FieldElement::zero(desc);
            let mut hi = FieldElement::zero(desc);
            for k in 0..4 {
                let c = cross(&up[j], &up[k]);
                if c.is_negative() {
                    lo += &c;
                } else {
                    hi += &c;
                }
            }
            let coeffs: [FieldElement; 4] = array::from_fn(|k| cross(&up[j], &gens[k]));
            Slab {
                dir: up[j].clone(),
                lo_f: lo.to_f64(),
                hi_f: hi.to_f64(),
                lo,
                hi,
                closed_hi: up[j][1].is_positive(),
                coeffs_f: coeffs.each_ref().map(FieldElement::to_f64),
                coeffs,
            }
        });
        Window {
            gens,
            base,
            order,
            vertices,
            slabs,
        }
    }

    /// Vertices in counterclockwise order, starting from the lowest one.
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// `π^⊥(e_k)` in window coordinates.
    pub fn generator(&self, k: usize) -> &Vec2 {
        &self.gens[k]
    }

    /// Generator indices sorted by angle (after orienting upward).
    pub fn angular_order(&self) -> [usize; 4] {
        self.order
    }

    /// Bounds `(lo, hi)` of the slab between the edges parallel to
    /// generator `j`.
    pub fn slab_bounds(&self, j: usize) -> (&FieldElement, &FieldElement) {
        (&self.slabs[j].lo, &self.slabs[j].hi)
    }

    /// Generator `j` oriented upward, the direction of its two edges.
    pub fn slab_direction(&self, j: usize) -> &Vec2 {
        &self.slabs[j].dir
    }

    pub fn slab_value(&self, j: usize, p: &Vec2) -> FieldElement {
        cross(&self.slabs[j].dir, &sub2(p, &self.base))
    }

    /// Whether `p` lies between the two edges parallel to generator `j`,
    /// with the half-open convention.
    pub fn in_strip(&self, j: usize, p: &Vec2) -> bool {
        self.slabs[j].contains_value(&self.slab_value(j, p))
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        (0..4).all(|j| self.in_strip(j, p))
    }

    /// Closed-window membership.
    pub fn contains_closed(&self, p: &Vec2) -> bool {
        (0..4).all(|j| {
            let v = self.slab_value(j, p);
            v.cmp_real(&self.slabs[j].lo) != Ordering::Less
                && v.cmp_real(&self.slabs[j].hi) != Ordering::Greater
        })
    }

    /// Whether `p` lies on the boundary of the closed window.
    pub fn on_boundary(&self, p: &Vec2) -> bool {
        self.contains_closed(p)
            && (0..4).any(|j| {
                let v = self.slab_value(j, p);
                v == self.slabs[j].lo || v == self.slabs[j].hi
            })
    }
}

/// Membership in the tube `E + offset + [0,1]⁴` for lattice points, i.e.
/// `π^⊥(z − offset)` in the window, with floating-point filtering.
#[derive(Clone, Debug)]
pub struct Tube {
    frame: Frame,
    window: Window,
    offset: [Rational; 4],
    consts: [FieldElement; 4],
    consts_f: [f64; 4],
}

/// Result of a filtered slab test.
enum Filtered {
    In,
    Out,
    Unsure,
}

impl Tube {
    pub fn new(s: &Slope) -> Result<Self> {
        let frame = Frame::new(s)?;
        let window = Window::new(&frame);
        Ok(Self::from_parts(frame, window, s.offset().clone()))
    }

    pub fn from_parts(frame: Frame, window: Window, offset: [Rational; 4]) -> Self {
        let shift = add2(&frame.perp_coords_rational(&offset), &window.base);
        let consts: [FieldElement; 4] = array::from_fn(|j| cross(&window.slabs[j].dir, &shift));
        let consts_f = consts.each_ref().map(FieldElement::to_f64);
        Tube {
            frame,
            window,
            offset,
            consts,
            consts_f,
        }
    }

    pub fn with_offset(&self, offset: [Rational; 4]) -> Self {
        Self::from_parts(self.frame.clone(), self.window.clone(), offset)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn offset(&self) -> &[Rational; 4] {
        &self.offset
    }

    /// Window coordinates of `π^⊥(z − offset)`.
    pub fn window_point(&self, z: &[i64; 4]) -> Vec2 {
        sub2(
            &self.frame.perp_coords(z),
            &self.frame.perp_coords_rational(&self.offset),
        )
    }

    /// `λ_j(π^⊥(z − offset))`, exactly.
    pub fn slab_value(&self, j: usize, z: &[i64; 4]) -> FieldElement {
        let s = &self.window.slabs[j];
        let mut acc = -&self.consts[j];
        for k in 0..4 {
            if z[k] != 0 {
                acc += &s.coeffs[k].scale_i64(z[k]);
            }
        }
        acc
    }

    pub fn slab_value_f64(&self, j: usize, z: &[i64; 4]) -> f64 {
        let s = &self.window.slabs[j];
        (0..4).map(|k| z[k] as f64 * s.coeffs_f[k]).sum::<f64>() - self.consts_f[j]
    }

    fn filter(&self, j: usize, z: &[i64; 4]) -> Filtered {
        let s = &self.window.slabs[j];
        let v = self.slab_value_f64(j, z);
        let eps = FILTER_EPS * (1.0 + libm::fabs(v) + libm::fabs(s.lo_f) + libm::fabs(s.hi_f));
        if v > s.lo_f + eps && v < s.hi_f - eps {
            Filtered::In
        } else if v < s.lo_f - eps || v > s.hi_f + eps {
            Filtered::Out
        } else {
            Filtered::Unsure
        }
    }

    /// Whether `π^⊥(z − offset)` lies between the edges parallel to
    /// generator `j` (half-open).
    pub fn in_strip(&self, j: usize, z: &[i64; 4]) -> bool {
        match self.filter(j, z) {
            Filtered::In => true,
            Filtered::Out => false,
            Filtered::Unsure => self.window.slabs[j].contains_value(&self.slab_value(j, z)),
        }
    }

    /// Whether `z` is a vertex of the tiling with this offset.
    pub fn selects(&self, z: &[i64; 4]) -> bool {
        // cheap rejections first
        let mut unsure = [false; 4];
        for (j, u) in unsure.iter_mut().enumerate() {
            match self.filter(j, z) {
                Filtered::Out => return false,
                Filtered::In => {}
                Filtered::Unsure => *u = true,
            }
        }
        (0..4)
            .filter(|&j| unsure[j])
            .all(|j| self.window.slabs[j].contains_value(&self.slab_value(j, z)))
    }

    /// Whether `π^⊥(z − offset)` lies exactly on the window boundary.
    pub fn on_boundary(&self, z: &[i64; 4]) -> bool {
        let mut near = false;
        for j in 0..4 {
            match self.filter(j, z) {
                Filtered::Out => return false,
                Filtered::In => {}
                Filtered::Unsure => near = true,
            }
        }
        near && self.window.on_boundary(&self.window_point(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, ratio};
    use alloc::vec;

    fn e2(a: i64, b: i64) -> FieldElement {
        let q = FieldDescriptor::quadratic(2).unwrap();
        FieldElement::from_coeffs(q, vec![rat(a), rat(b)]).unwrap()
    }

    fn ab() -> Slope {
        Slope::through_origin(
            [e2(0, 1), e2(1, 0), e2(0, 0), e2(-1, 0)],
            [e2(0, 0), e2(1, 0), e2(0, 1), e2(1, 0)],
        )
        .unwrap()
    }

    fn biquadratic() -> Slope {
        let q = FieldDescriptor::new(&[2, 3]).unwrap();
        let e = |c: [i64; 4]| {
            FieldElement::from_coeffs(q, c.iter().map(|&x| rat(x)).collect()).unwrap()
        };
        crate::slope::GrassmannCoords::new([
            e([1, 0, 0, 0]),
            e([0, 1, 0, 0]),
            e([0, 0, 1, 0]),
            e([0, 2, 0, 0]),
            e([0, 0, 3, 0]),
            e([0, 0, 0, 1]),
        ])
        .unwrap()
        .plane_from_grassmann()
        .unwrap()
    }

    fn check_window(s: &Slope) -> Window {
        let frame = Frame::new(s).unwrap();
        for b in frame.perp_basis() {
            assert!(s.contains_direction(b) == false);
            assert!(field::dot4(b, s.u()).is_zero());
            assert!(field::dot4(b, s.v()).is_zero());
        }
        assert!(field::dot4(&frame.e_basis()[0], &frame.e_basis()[1]).is_zero());
        let w = Window::new(&frame);
        let vs = w.vertices();
        assert_eq!(vs.len(), 8);
        for k in 0..8 {
            let turn = cross(
                &sub2(&vs[(k + 1) % 8], &vs[k]),
                &sub2(&vs[(k + 2) % 8], &vs[(k + 1) % 8]),
            );
            assert!(turn.is_positive());
            // central symmetry
            assert_eq!(add2(&vs[k], &vs[(k + 4) % 8]), add2(&vs[0], &vs[4]));
        }
        let half = [ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2)];
        let center = frame.perp_coords_rational(&half);
        assert_eq!(add2(&center, &center), add2(&vs[0], &vs[4]));
        assert!(w.contains(&center));
        w
    }

    #[test]
    fn ammann_beenker_octagon() {
        let w = check_window(&ab());
        // the octagon is regular: all edges equal in length
        let frame = Frame::new(&ab()).unwrap();
        let vs = w.vertices();
        let l0 = frame.perp_dot(&sub2(&vs[1], &vs[0]), &sub2(&vs[1], &vs[0]));
        for k in 1..8 {
            let d = sub2(&vs[(k + 1) % 8], &vs[k]);
            assert_eq!(frame.perp_dot(&d, &d), l0);
        }
    }

    #[test]
    fn biquadratic_window_matches_float_hull() {
        let s = biquadratic();
        let w = check_window(&s);
        let frame = Frame::new(&s).unwrap();
        let pts: Vec<[f64; 2]> = (0..16)
            .map(|m| frame.perp_point_f64(array::from_fn(|k| ((m >> k) & 1) as f64)))
            .collect();
        // Jarvis march on the floats
        let start = (0..16)
            .min_by(|&a, &b| {
                (pts[a][1], pts[a][0])
                    .partial_cmp(&(pts[b][1], pts[b][0]))
                    .unwrap()
            })
            .unwrap();
        let mut hull = vec![start];
        loop {
            let cur = *hull.last().unwrap();
            let mut next = (cur + 1) % 16;
            for c in 0..16 {
                let a = [pts[next][0] - pts[cur][0], pts[next][1] - pts[cur][1]];
                let b = [pts[c][0] - pts[cur][0], pts[c][1] - pts[cur][1]];
                if cross_f(a, b) < -1e-12 {
                    next = c;
                }
            }
            if next == start {
                break;
            }
            hull.push(next);
        }
        assert_eq!(hull.len(), 8);
        for (k, &h) in hull.iter().enumerate() {
            let v = &w.vertices()[k];
            assert!((v[0].to_f64() - pts[h][0]).abs() < 1e-9);
            assert!((v[1].to_f64() - pts[h][1]).abs() < 1e-9);
        }
    }

    #[test]
    fn coordinate_plane_rejected() {
        let q = FieldDescriptor::RATIONAL;
        let i = |x| FieldElement::from_int(q, x);
        let s = Slope::through_origin([i(1), i(0), i(0), i(0)], [i(0), i(1), i(0), i(0)]).unwrap();
        assert!(Frame::new(&s).is_err());
    }

    #[test]
    fn interior_offset_selects_origin() {
        let s = ab().with_offset([ratio(-1, 2), ratio(-1, 3), ratio(-1, 5), ratio(-1, 7)]);
        let t = Tube::new(&s).unwrap();
        assert!(t.selects(&[0, 0, 0, 0]));
        assert!(!t.on_boundary(&[0, 0, 0, 0]));
        assert!(!t.selects(&[5, 0, 0, 0]));
    }

    #[test]
    fn half_open_edges() {
        let t = Tube::new(&ab()).unwrap();
        let w = t.window();
        let vs = w.vertices();
        let q = vs[0][0].descriptor();
        let half = FieldElement::from_rational(q, ratio(1, 2));
        // exactly one of each pair of opposite edge midpoints
        for k in 0..4 {
            let mid = |k: usize| {
                let s = add2(&vs[k], &vs[(k + 1) % 8]);
                [&s[0] * &half, &s[1] * &half]
            };
            assert!(w.on_boundary(&mid(k)));
            assert_ne!(w.contains(&mid(k)), w.contains(&mid(k + 4)));
        }
        // The bottom edge is horizontal here, so (1, ε) points inward at the
        // bottom-left vertex and at the two lower vertices of the left chain.
        assert!(vs[0][1] == vs[1][1]);
        let inside: Vec<usize> = (0..8).filter(|&k| w.contains(&vs[k])).collect();
        assert_eq!(inside, [0, 6, 7]);
        // the filtered lattice test agrees with the exact one
        for m in 0..16 {
            let z: [i64; 4] = array::from_fn(|k| (m >> k) & 1);
            assert_eq!(t.selects(&z), w.contains(&t.window_point(&z)));
        }
    }
}
