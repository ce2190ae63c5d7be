//! Cut-and-project patches: vertex selection, face assembly and tile
//! counts.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::array;
use core::cmp::Ordering;

use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::geometry::{cross, cross_f, sub2, Frame, Tube, Vec2, FILTER_EPS};
use crate::field::rational::{self, Rational};
use crate::field::FieldElement;
use crate::slope::{Slope, PAIRS};
use crate::{Error, Result};

/// A unit 2-face of Z⁴: `base + [0,1]e_i + [0,1]e_j` with `i < j`
/// (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub base: [i64; 4],
    pub i: usize,
    pub j: usize,
}

impl Face {
    pub fn new(base: [i64; 4], i: usize, j: usize) -> Self {
        assert!(i < j && j < 4, "face needs 0 ≤ i < j < 4");
        Face { base, i, j }
    }

    pub fn corners(&self) -> [[i64; 4]; 4] {
        let mut out = [self.base; 4];
        out[1][self.i] += 1;
        out[2][self.j] += 1;
        out[3][self.i] += 1;
        out[3][self.j] += 1;
        out
    }

    /// Index of the pair `(i, j)` in `PAIRS`.
    pub fn pair(&self) -> usize {
        crate::slope::pair_index(self.i, self.j)
    }

    pub fn translated(&self, t: &[i64; 4]) -> Face {
        Face {
            base: array::from_fn(|k| self.base[k] + t[k]),
            ..*self
        }
    }
}

/// A finite piece of a tiling, lifted to Z⁴.
#[derive(Clone, Debug)]
pub struct TilingPatch {
    slope: Slope,
    radius: Rational,
    vertices: BTreeSet<[i64; 4]>,
    faces: BTreeSet<Face>,
}

impl TilingPatch {
    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn vertices(&self) -> &BTreeSet<[i64; 4]> {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PatchOptions {
    /// Reject offsets for which a lattice point in range projects onto the
    /// window boundary, instead of resolving it half-open.
    pub strict_boundary: bool,
    /// Seed for the suggested perturbation reported on a boundary hit.
    pub seed: u64,
}

/// Slack added to the float search radius so that every vertex of a face
/// meeting the disk is reached by the search.
const SEARCH_MARGIN: f64 = 4.0;

/// The patch of tiles meeting the closed disk of the given radius around
/// `π(0)`, for the tiling `E + offset` (with the slope's own offset).
pub fn generate_patch(s: &Slope, radius: &Rational) -> Result<TilingPatch> {
    generate_patch_with(s, radius, PatchOptions::default())
}

pub fn generate_patch_with(
    s: &Slope,
    radius: &Rational,
    opts: PatchOptions,
) -> Result<TilingPatch> {
    if radius < &Rational::zero() {
        return Err(Error::InvalidParameter("negative radius"));
    }
    let tube = Tube::new(s)?;
    let r = rational::to_f64(radius) + SEARCH_MARGIN;
    let vertices = select_vertices(&tube, r, |z| {
        if opts.strict_boundary && tube.on_boundary(z) {
            return Err(boundary_hit(s, *z, opts.seed));
        }
        Ok(())
    })?;
    Ok(patch_from_vertices(s, tube.frame(), radius, &vertices))
}

/// The tiles whose four corners lie in the closed rectangle
/// `|x| ≤ width/2`, `|y| ≤ height/2` of `E`, in the orthonormal coordinates
/// of the frame, centered at `π(0)`. The patch records the radius of the
/// disk it was cut from.
pub fn generate_rect_patch(
    s: &Slope,
    width: &Rational,
    height: &Rational,
    opts: PatchOptions,
) -> Result<TilingPatch> {
    if width < &Rational::zero() || height < &Rational::zero() {
        return Err(Error::InvalidParameter("negative rectangle side"));
    }
    let half = [width / rational::rat(2), height / rational::rat(2)];
    let disk = generate_patch_with(s, &(&half[0] + &half[1]), opts)?;
    let frame = Frame::new(s)?;
    let bound = half.clone().map(|h| &h * &h);
    let inside = |z: &[i64; 4]| {
        let p = frame.e_coords(z);
        (0..2).all(|k| {
            let mut axis = p.clone();
            axis[1 - k] = FieldElement::zero(p[k].descriptor());
            frame.e_norm2(&axis).cmp_rational(&bound[k]) != Ordering::Greater
        })
    };
    let faces: BTreeSet<Face> = disk
        .faces
        .iter()
        .filter(|f| f.corners().iter().all(&inside))
        .copied()
        .collect();
    let vertices = faces.iter().flat_map(Face::corners).collect();
    Ok(TilingPatch {
        slope: disk.slope,
        radius: disk.radius,
        vertices,
        faces,
    })
}

fn boundary_hit(s: &Slope, point: [i64; 4], seed: u64) -> Error {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts: Vec<String> = s
        .offset()
        .iter()
        .map(|o| {
            let n = (rng.next_u32() % 1999) as i64 - 999;
            rational::to_string(&(o + rational::ratio(n, 1_000_000)))
        })
        .collect();
    Error::BoundaryHit {
        point,
        suggestion: parts.join(", "),
    }
}

/// A selected lattice point close to `π(0)`: rounds `offset − π(offset + h)`
/// up, with `h = (½,½,½,½)`, then searches its neighbourhood.
pub fn seed_vertex(tube: &Tube) -> Option<[i64; 4]> {
    let frame = tube.frame();
    let o: [f64; 4] = tube.offset().each_ref().map(rational::to_f64);
    let shifted = o.map(|x| x + 0.5);
    let pe = frame.e_point_f64(shifted);
    // π(x) as a vector of R⁴ through the orthonormal E basis
    let units = e_unit_vectors(frame);
    let center: [f64; 4] = array::from_fn(|k| o[k] - pe[0] * units[0][k] - pe[1] * units[1][k]);
    let c0 = center.map(|x| libm::ceil(x) as i64);
    let mut best: Option<([i64; 4], f64)> = None;
    for m in 0..81 {
        let mut z = c0;
        let mut mm = m;
        for x in z.iter_mut() {
            *x += (mm % 3) as i64 - 1;
            mm /= 3;
        }
        if tube.selects(&z) {
            let p = frame.e_point(&z);
            let d = p[0] * p[0] + p[1] * p[1];
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((z, d));
            }
        }
    }
    best.map(|(z, _)| z)
}

fn e_unit_vectors(frame: &Frame) -> [[f64; 4]; 2] {
    array::from_fn(|i| {
        array::from_fn(|k| {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            frame.e_point_f64(e)[i]
        })
    })
}

/// Breadth-first search over `±e_k` from a seed vertex, keeping the
/// selected points with `|π(z)| ≤ r` (floating point).
pub(crate) fn select_vertices(
    tube: &Tube,
    r: f64,
    mut check: impl FnMut(&[i64; 4]) -> Result<()>,
) -> Result<BTreeSet<[i64; 4]>> {
    let frame = tube.frame();
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    let Some(seed) = seed_vertex(tube) else {
        return Ok(out);
    };
    let within = |z: &[i64; 4]| {
        let p = frame.e_point(z);
        p[0] * p[0] + p[1] * p[1] <= r * r
    };
    let mut queue = VecDeque::new();
    seen.insert(seed);
    queue.push_back(seed);
    while let Some(z) = queue.pop_front() {
        check(&z)?;
        out.insert(z);
        for k in 0..4 {
            for d in [-1, 1] {
                let mut n = z;
                n[k] += d;
                if seen.insert(n) && within(&n) {
                    if tube.selects(&n) {
                        queue.push_back(n);
                    } else {
                        check(&n)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Assembles the faces with four vertices in `vertices` whose projection
/// meets the closed disk of radius `radius` about `π(0)`.
pub fn patch_from_vertices(
    s: &Slope,
    frame: &Frame,
    radius: &Rational,
    vertices: &BTreeSet<[i64; 4]>,
) -> TilingPatch {
    let desc = frame.descriptor();
    let origin: Vec2 = [FieldElement::zero(desc), FieldElement::zero(desc)];
    let ball = Ball::new(origin, [0.0, 0.0], radius.clone());
    let mut faces = BTreeSet::new();
    for z in vertices {
        for &(i, j) in &PAIRS {
            let f = Face::new(*z, i, j);
            if f.corners()[1..].iter().all(|c| vertices.contains(c)) && ball.meets(frame, &f) {
                faces.insert(f);
            }
        }
    }
    let mut kept: BTreeSet<[i64; 4]> = faces.iter().flat_map(|f| f.corners()).collect();
    let r = rational::to_f64(radius);
    for z in vertices {
        let p = frame.e_point(z);
        let d = libm::sqrt(p[0] * p[0] + p[1] * p[1]);
        if d <= r - 1e-9 || (d <= r + 1e-9 && ball.contains_point(frame, &frame.e_coords(z))) {
            kept.insert(*z);
        }
    }
    TilingPatch {
        slope: s.clone(),
        radius: radius.clone(),
        vertices: kept,
        faces,
    }
}

/// A closed disk of `E`, with exact and filtered predicates.
pub(crate) struct Ball {
    /// Set when the center is a lattice point's projection.
    pub(crate) lattice_center: Option<[i64; 4]>,
    center: Vec2,
    center_f: [f64; 2],
    radius2: Rational,
    radius_f: f64,
}

impl Ball {
    pub(crate) fn new(center: Vec2, center_f: [f64; 2], radius: Rational) -> Self {
        Ball {
            lattice_center: None,
            center,
            center_f,
            radius2: &radius * &radius,
            radius_f: rational::to_f64(&radius),
        }
    }

    pub(crate) fn contains_point(&self, frame: &Frame, p: &Vec2) -> bool {
        let d = sub2(p, &self.center);
        frame.e_norm2(&d).cmp_rational(&self.radius2) != Ordering::Greater
    }

    /// Whether the projected tile of `f` meets the disk.
    pub(crate) fn meets(&self, frame: &Frame, f: &Face) -> bool {
        let cs = f.corners();
        if self.lattice_center.is_some_and(|c| cs.contains(&c)) {
            return true;
        }
        let pf: [[f64; 2]; 4] = cs.map(|c| frame.e_point(&c));
        let d = parallelogram_distance_f(self.center_f, pf[0], pf[1], pf[2]);
        let eps = FILTER_EPS * (1.0 + self.radius_f);
        if d > self.radius_f + eps {
            return false;
        }
        if d < self.radius_f - eps {
            return true;
        }
        let p = frame.e_coords(&f.base);
        let mut a = [0; 4];
        a[f.i] = 1;
        let mut b = [0; 4];
        b[f.j] = 1;
        let (a, b) = (frame.e_coords(&a), frame.e_coords(&b));
        parallelogram_meets_ball(frame, &self.center, &self.radius2, &p, &a, &b)
    }
}

fn parallelogram_distance_f(x: [f64; 2], p: [f64; 2], pa: [f64; 2], pb: [f64; 2]) -> f64 {
    let a = [pa[0] - p[0], pa[1] - p[1]];
    let b = [pb[0] - p[0], pb[1] - p[1]];
    let w = [x[0] - p[0], x[1] - p[1]];
    let den = cross_f(a, b);
    let alpha = cross_f(w, b) / den;
    let beta = cross_f(a, w) / den;
    if (0.0..=1.0).contains(&alpha) && (0.0..=1.0).contains(&beta) {
        return 0.0;
    }
    let pab = [pa[0] + b[0], pa[1] + b[1]];
    [(p, a), (p, b), (pa, b), (pb, a)]
        .iter()
        .map(|&(s, d)| segment_distance_f(x, s, d))
        .fold(f64::INFINITY, f64::min)
        .min(dist_f(x, pab))
}

fn dist_f(a: [f64; 2], b: [f64; 2]) -> f64 {
    libm::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]))
}

fn segment_distance_f(x: [f64; 2], s: [f64; 2], d: [f64; 2]) -> f64 {
    let w = [x[0] - s[0], x[1] - s[1]];
    let dd = d[0] * d[0] + d[1] * d[1];
    let t = ((w[0] * d[0] + w[1] * d[1]) / dd).clamp(0.0, 1.0);
    dist_f(x, [s[0] + t * d[0], s[1] + t * d[1]])
}

/// Exact test that the parallelogram `p + [0,1]a + [0,1]b` (raw `E`
/// coordinates) meets the closed disk of squared radius `r2` about `x`.
pub(crate) fn parallelogram_meets_ball(
    frame: &Frame,
    x: &Vec2,
    r2: &Rational,
    p: &Vec2,
    a: &Vec2,
    b: &Vec2,
) -> bool {
    let w = sub2(x, p);
    let den = cross(a, b);
    let sd = den.sign();
    let inside01 = |num: FieldElement| {
        let n = num.sign() * sd;
        n >= 0 && (&num - &den).sign() * sd <= 0
    };
    if inside01(cross(&w, b)) && inside01(cross(a, &w)) {
        return true;
    }
    let pa = super::geometry::add2(p, a);
    let pb = super::geometry::add2(p, b);
    segment_within(frame, x, p, a, r2)
        || segment_within(frame, x, p, b, r2)
        || segment_within(frame, x, &pa, b, r2)
        || segment_within(frame, x, &pb, a, r2)
}

fn segment_within(frame: &Frame, x: &Vec2, s: &Vec2, d: &Vec2, r2: &Rational) -> bool {
    let w = sub2(x, s);
    let ww = frame.e_norm2(&w);
    let wd = frame.e_dot(&w, d);
    let dd = frame.e_norm2(d);
    if !wd.is_positive() {
        return ww.cmp_rational(r2) != Ordering::Greater;
    }
    if wd.cmp_real(&dd) != Ordering::Less {
        let e = sub2(&w, d);
        return frame.e_norm2(&e).cmp_rational(r2) != Ordering::Greater;
    }
    // |w|² − ⟨w,d⟩²/|d|² ≤ r²  ⟺  (|w|² − r²)|d|² ≤ ⟨w,d⟩²
    let mut lhs = ww;
    lhs -= &FieldElement::from_rational(lhs.descriptor(), r2.clone());
    (&lhs * &dd).cmp_real(&wd.square()) != Ordering::Greater
}

/// Number of faces per pair `ij`, keyed by the pair's position in `PAIRS`.
pub fn tile_frequencies(p: &TilingPatch) -> BTreeMap<(usize, usize), usize> {
    let mut out: BTreeMap<(usize, usize), usize> = PAIRS.iter().map(|&ij| (ij, 0)).collect();
    for f in &p.faces {
        *out.get_mut(&(f.i, f.j)).expect("all pairs present") += 1;
    }
    out
}

impl core::fmt::Display for Face {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}+T{}{}", self.base, self.i + 1, self.j + 1)
    }
}
