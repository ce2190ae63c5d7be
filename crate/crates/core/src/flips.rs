//! Flip sets of shifted tilings, their structure, and staircase steps.
//!
//! Shifting the offset of a planar tiling by `s` makes the lattice points of
//! `E(s) = (E + s + [0,1]⁴) \ (E + [0,1]⁴)` enter the tube while others leave
//! it; on the tiling each change is a local rearrangement (a flip). The set
//! splits as `E(s) = E₁ ∪ E₂ ∪ E₃ ∪ E₄` with
//! `Eᵢ = (E + s + [0,1]⁴) \ (E + [0,1]⁴ + R·eᵢ)`, and the shape of `Eᵢ`
//! depends on the number of subperiods of type `i`: isolated points, points
//! near parallel lines, or points near a lattice.
//!
//! A step is a tiling which follows `E` on the left of a curve and `E + s` on
//! its right, the curve staying clear of every flip. Stacking steps gives a
//! staircase: a non-planar tiling with the same small patterns.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::field::rational::{self, Rational};
use crate::field::{FieldElement, Vec4};
use crate::slope::Slope;
use crate::subperiod::{self, Subperiod};
use crate::tiling::{
    cross, patch_from_vertices, r_atlas_with_frame, select_vertices, Frame, Pattern, TilingPatch,
    Tube, Vec2,
};
use crate::{Error, Result};

/// Extra search radius for the vertex enumeration, so that every selected
/// point of the region is reached through selected neighbours.
const SEARCH_MARGIN: f64 = 4.0;

fn shifted_offset(o: &[Rational; 4], shift: &[Rational; 4], times: i64) -> [Rational; 4] {
    let t = rational::rat(times);
    core::array::from_fn(|k| &o[k] + &shift[k] * &t)
}

fn is_multiple_of_axis(shift: &[Rational; 4], i: usize) -> bool {
    (0..4).all(|k| k == i || shift[k].is_zero())
}

/// The flip set `E(s)` of a shift, inside a disk of `E`, split into the four
/// classes `E₁..E₄` (`classes[i]` holds `E_{i+1}`).
#[derive(Clone, Debug)]
pub struct ShiftSet {
    shift: [Rational; 4],
    radius: Rational,
    points: Vec<[i64; 4]>,
    exiting: Vec<[i64; 4]>,
    classes: [Vec<[i64; 4]>; 4],
}

impl ShiftSet {
    pub fn shift(&self) -> &[Rational; 4] {
        &self.shift
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    /// The points of `E(s)`, sorted.
    pub fn points(&self) -> &[[i64; 4]] {
        &self.points
    }

    /// Points leaving the tube, i.e. in `E + [0,1]⁴` but not in
    /// `E + s + [0,1]⁴`.
    pub fn exiting(&self) -> &[[i64; 4]] {
        &self.exiting
    }

    /// The class `E_kind`, for `kind` in `1..=4`.
    pub fn class(&self, kind: usize) -> &[[i64; 4]] {
        &self.classes[kind - 1]
    }

    pub fn classes(&self) -> &[Vec<[i64; 4]>; 4] {
        &self.classes
    }

    /// Whether the union of the classes is exactly `E(s)`.
    pub fn is_covering(&self) -> bool {
        let union: BTreeSet<&[i64; 4]> = self.classes.iter().flatten().collect();
        union.len() == self.points.len() && self.points.iter().all(|z| union.contains(z))
    }
}

/// Enumerates and classifies `E(s)` over the lattice points with
/// `|π(z)| ≤ radius`.
///
/// The shift is accepted only if, for every class `Eᵢ`, the diameter of its
/// projection onto `E^⊥` plus `|s|` stays below `2|π^⊥(eᵢ)|`. Two points of
/// `Eᵢ` then differ by a vector of `E`, a vector shorter than `|s|` and at
/// most one unit of `eᵢ`.
pub fn shifted_points(s: &Slope, shift: &[Rational; 4], radius: &Rational) -> Result<ShiftSet> {
    if radius.is_negative() {
        return Err(Error::InvalidParameter("negative radius"));
    }
    let tube0 = Tube::new(s)?;
    let tube1 = tube0.with_offset(shifted_offset(s.offset(), shift, 1));
    let frame = tube0.frame();
    let rf = rational::to_f64(radius) + SEARCH_MARGIN;
    let before = select_vertices(&tube0, rf, |_| Ok(()))?;
    let after = select_vertices(&tube1, rf, |_| Ok(()))?;
    let points: Vec<[i64; 4]> = after
        .difference(&before)
        .filter(|z| frame.e_within(z, radius))
        .copied()
        .collect();
    let exiting = before
        .difference(&after)
        .filter(|z| frame.e_within(z, radius))
        .copied()
        .collect();
    let classes: [Vec<[i64; 4]>; 4] = core::array::from_fn(|i| {
        if is_multiple_of_axis(shift, i) {
            return Vec::new();
        }
        points
            .iter()
            .filter(|z| !tube0.in_strip(i, z))
            .copied()
            .collect()
    });
    let sf = shift.each_ref().map(rational::to_f64);
    let shift_len = libm::sqrt(sf.iter().map(|x| x * x).sum());
    for (i, class) in classes.iter().enumerate() {
        check_dichotomy(&tube0, i, class, shift_len)?;
    }
    Ok(ShiftSet {
        shift: shift.clone(),
        radius: radius.clone(),
        points,
        exiting,
        classes,
    })
}

fn check_dichotomy(tube: &Tube, i: usize, class: &[[i64; 4]], shift_len: f64) -> Result<()> {
    const DIRECTIONS: usize = 64;
    if class.is_empty() {
        return Ok(());
    }
    let frame = tube.frame();
    let o: [f64; 4] = tube.offset().each_ref().map(rational::to_f64);
    let pts: Vec<[f64; 2]> = class
        .iter()
        .map(|z| frame.perp_point_f64(core::array::from_fn(|k| z[k] as f64 - o[k])))
        .collect();
    let mut e = [0.0; 4];
    e[i] = 1.0;
    let d = frame.perp_point_f64(e);
    let d_len = libm::hypot(d[0], d[1]);
    // the widest of several directions bounds the diameter from above
    let mut widest = (0.0, 0, 0);
    for m in 0..DIRECTIONS {
        let a = core::f64::consts::PI * m as f64 / DIRECTIONS as f64;
        let (c, sn) = (libm::cos(a), libm::sin(a));
        let proj = |p: &[f64; 2]| p[0] * c + p[1] * sn;
        let (mut lo, mut hi) = (0, 0);
        for (n, p) in pts.iter().enumerate() {
            if proj(p) < proj(&pts[lo]) {
                lo = n;
            }
            if proj(p) > proj(&pts[hi]) {
                hi = n;
            }
        }
        let w = proj(&pts[hi]) - proj(&pts[lo]);
        if w > widest.0 {
            widest = (w, lo, hi);
        }
    }
    let diameter = widest.0 / libm::cos(core::f64::consts::PI / (2 * DIRECTIONS) as f64);
    if diameter + shift_len >= 2.0 * d_len {
        return Err(Error::ShiftTooLarge {
            direction: i + 1,
            first: class[widest.1],
            second: class[widest.2],
        });
    }
    Ok(())
}

/// Which of the three descriptions applies to a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// No subperiod: points pairwise at distance at least `r`.
    Sparse,
    /// One subperiod: points within distance 1 of parallel lines directed by
    /// its lift, the lines pairwise at least `r` apart.
    Lines,
    /// Two subperiods: points within distance 1 of a lattice.
    Lattice,
}

/// A certificate that a clause fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two points closer than `r`.
    ClosePair([i64; 4], [i64; 4]),
    /// Extreme points of a cluster too wide to lie within 1 of a line.
    WideLine([i64; 4], [i64; 4]),
    /// Points of two neighbouring lines closer than `r`.
    CloseLines([i64; 4], [i64; 4]),
    /// Two points whose difference leaves the lattice plane.
    OffPlane([i64; 4], [i64; 4]),
    /// Two points too far apart along `eᵢ` to lie within 1 of one lattice.
    OffLattice([i64; 4], [i64; 4]),
    /// More than two subperiods of one type.
    TooManySubperiods,
}

#[derive(Clone, Debug)]
pub struct ClauseReport {
    /// Subperiod type, in `1..=4`.
    pub kind: usize,
    pub clause: Option<Clause>,
    pub points: usize,
    /// Number of lines found (clause 1).
    pub lines: usize,
    /// Squared minimal distance between neighbouring lines (clause 1), or
    /// between points closer than about `2r` (clause 0).
    pub min_gap2: Option<FieldElement>,
    pub witness: Option<Witness>,
}

impl ClauseReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    /// Whether `E(s) = E₁ ∪ E₂ ∪ E₃ ∪ E₄` held.
    pub covering: bool,
    pub clauses: Vec<ClauseReport>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.covering && self.clauses.iter().all(ClauseReport::passed)
    }
}

/// Checks on each class the clause matching the number of subperiods of its
/// type, with exact distance comparisons.
pub fn verify_structure(
    ss: &ShiftSet,
    s: &Slope,
    subperiods: &[Subperiod],
    r: &Rational,
) -> Result<StructureReport> {
    let frame = Frame::new(s)?;
    let mut clauses = Vec::with_capacity(4);
    for kind in 1..=4 {
        let class = ss.class(kind);
        let own = subperiod::of_type(subperiods, kind);
        let mut report = ClauseReport {
            kind,
            clause: None,
            points: class.len(),
            lines: 0,
            min_gap2: None,
            witness: None,
        };
        match own.len() {
            0 => {
                report.clause = Some(Clause::Sparse);
                let (gap, w) = check_sparse(&frame, kind - 1, class, r);
                report.min_gap2 = gap;
                report.witness = w;
            }
            1 => {
                report.clause = Some(Clause::Lines);
                let lift = lift_of(s, own[0])?;
                let lines = LineClusters::new(&frame, &lift, class);
                report.lines = lines.clusters.len();
                report.min_gap2 = lines.min_spacing2();
                report.witness = lines.check(r);
            }
            2 => {
                report.clause = Some(Clause::Lattice);
                report.witness = check_lattice(s, &frame, kind, [own[0], own[1]], class)?;
            }
            _ => report.witness = Some(Witness::TooManySubperiods),
        }
        clauses.push(report);
    }
    Ok(StructureReport {
        covering: ss.is_covering(),
        clauses,
    })
}

fn lift_of(s: &Slope, sp: &Subperiod) -> Result<Vec4> {
    match sp.lift() {
        Some(l) => Ok(l.clone()),
        None => subperiod::lift_subperiod(s, sp),
    }
}

fn diff(a: &[i64; 4], b: &[i64; 4]) -> [i64; 4] {
    core::array::from_fn(|k| a[k] - b[k])
}

/// Pairs differing by `±eᵢ` are one point of `πᵢ(Eᵢ)` seen twice (the
/// correction by `eᵢ`) and are not compared.
fn check_sparse(
    frame: &Frame,
    i: usize,
    class: &[[i64; 4]],
    r: &Rational,
) -> (Option<FieldElement>, Option<Witness>) {
    let rf = rational::to_f64(r);
    let cell = rf.max(1.0);
    let pts: Vec<[f64; 2]> = class.iter().map(|z| frame.e_point(z)).collect();
    let key = |p: [f64; 2]| {
        (
            libm::floor(p[0] / cell) as i64,
            libm::floor(p[1] / cell) as i64,
        )
    };
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (n, p) in pts.iter().enumerate() {
        grid.entry(key(*p)).or_default().push(n);
    }
    let r2 = r * r;
    let mut best: Option<(f64, usize, usize)> = None;
    let mut witness = None;
    for (a, p) in pts.iter().enumerate() {
        let (cx, cy) = key(*p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &b in bucket.iter().filter(|&&b| b > a) {
                    let d = diff(&class[a], &class[b]);
                    if (0..4).all(|k| k == i || d[k] == 0) && d[i].abs() == 1 {
                        continue;
                    }
                    let q = pts[b];
                    let d2 = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
                    if best.is_none_or(|(v, _, _)| d2 < v) {
                        best = Some((d2, a, b));
                    }
                    if witness.is_none() && d2 <= rf * rf * (1.0 + 1e-9) + 1e-9 {
                        let exact = frame.e_norm2(&frame.e_coords(&d));
                        if exact.cmp_rational(&r2) == Ordering::Less {
                            witness = Some(Witness::ClosePair(class[a], class[b]));
                        }
                    }
                }
            }
        }
    }
    // pairs farther apart than one cell are not examined; they are at
    // distance at least r
    let gap = best.map(|(_, a, b)| frame.e_norm2(&frame.e_coords(&diff(&class[a], &class[b]))));
    (gap, witness)
}

/// Points of one class grouped by their distance to lines directed by a
/// lift.
struct LineClusters<'a> {
    frame: &'a Frame,
    normal2: FieldElement,
    /// Clusters of `(c, point)` sorted by the unnormalized coordinate `c`.
    clusters: Vec<Vec<(FieldElement, [i64; 4])>>,
}

impl<'a> LineClusters<'a> {
    fn new(frame: &'a Frame, lift: &Vec4, class: &[[i64; 4]]) -> Self {
        let normal = frame.e_normal(&frame.e_coords_field(lift));
        let normal2 = frame.e_norm2(&normal);
        let scale = libm::sqrt(normal2.to_f64());
        let mut pts: Vec<(f64, FieldElement, [i64; 4])> = class
            .iter()
            .map(|z| {
                let c = frame.e_dot(&frame.e_coords(z), &normal);
                (c.to_f64() / scale, c, *z)
            })
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        let mut clusters: Vec<Vec<(FieldElement, [i64; 4])>> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for (f, c, z) in pts {
            if f - last > 1.0 || clusters.is_empty() {
                clusters.push(Vec::new());
            }
            last = f;
            clusters.last_mut().unwrap().push((c, z));
        }
        LineClusters {
            frame,
            normal2,
            clusters,
        }
    }

    fn midpoint(cluster: &[(FieldElement, [i64; 4])]) -> FieldElement {
        let lo = &cluster[0].0;
        let hi = &cluster[cluster.len() - 1].0;
        (lo + hi).scale(&rational::ratio(1, 2))
    }

    fn spacings2(&self) -> impl Iterator<Item = (usize, FieldElement)> + '_ {
        self.clusters.windows(2).enumerate().map(|(k, w)| {
            let d = &Self::midpoint(&w[1]) - &Self::midpoint(&w[0]);
            (k, d.square())
        })
    }

    fn min_spacing2(&self) -> Option<FieldElement> {
        let inv = self.normal2.inv().ok()?;
        self.spacings2()
            .map(|(_, d)| d)
            .min_by(|a, b| a.cmp_real(b))
            .map(|d| &d * &inv)
    }

    fn check(&self, r: &Rational) -> Option<Witness> {
        let _ = self.frame;
        let four = self.normal2.scale_i64(4);
        for cl in &self.clusters {
            let w = &cl[cl.len() - 1].0 - &cl[0].0;
            if w.square().cmp_real(&four) == Ordering::Greater {
                return Some(Witness::WideLine(cl[0].1, cl[cl.len() - 1].1));
            }
        }
        let bound = self.normal2.scale(&(r * r));
        for (k, d2) in self.spacings2() {
            if d2.cmp_real(&bound) == Ordering::Less {
                return Some(Witness::CloseLines(
                    self.clusters[k][0].1,
                    self.clusters[k + 1][0].1,
                ));
            }
        }
        None
    }
}

/// Coordinates other than `i`, in increasing order.
fn others(i: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for k in (0..4).filter(|&k| k != i) {
        out[n] = k;
        n += 1;
    }
    out
}

fn check_lattice(
    s: &Slope,
    frame: &Frame,
    kind: usize,
    sps: [&Subperiod; 2],
    class: &[[i64; 4]],
) -> Result<Option<Witness>> {
    let Some(z0) = class.first() else {
        return Ok(None);
    };
    let i = kind - 1;
    let idx = others(i);
    let lifts = [lift_of(s, sps[0])?, lift_of(s, sps[1])?];
    let ints: [[BigInt; 3]; 2] = core::array::from_fn(|m| {
        let e = sps[m].integer_entries();
        core::array::from_fn(|n| e[idx[n]].clone())
    });
    let a = &ints[0];
    let b = &ints[1];
    let normal = [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ];
    // a 2×2 minor of (a, b) which is invertible
    let (p, q) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(p, q)| !(&a[p] * &b[q] - &a[q] * &b[p]).is_zero())
        .ok_or(Error::DependentSubperiods)?;
    let det = Rational::from_integer(&a[p] * &b[q] - &a[q] * &b[p]);
    let mut ts: Vec<(FieldElement, [i64; 4])> = Vec::with_capacity(class.len());
    for z in class {
        let d = diff(z, z0);
        let dz: [BigInt; 3] = core::array::from_fn(|n| BigInt::from(d[idx[n]]));
        let dot: BigInt = (0..3).map(|n| &normal[n] * &dz[n]).sum();
        if !dot.is_zero() {
            return Ok(Some(Witness::OffPlane(*z0, *z)));
        }
        // solve dz = x·a + y·b on the chosen coordinates
        let x = Rational::from_integer(&dz[p] * &b[q] - &dz[q] * &b[p]) / &det;
        let y = Rational::from_integer(&a[p] * &dz[q] - &a[q] * &dz[p]) / &det;
        let lifted = &lifts[0][i].scale(&x) + &lifts[1][i].scale(&y);
        let t = &lifted.scale_i64(-1) + &FieldElement::from_int(lifted.descriptor(), d[i]);
        ts.push((t, *z));
    }
    let (lo, hi) = min_max(&ts);
    let mut e = [0; 4];
    e[i] = 1;
    let pe = frame.e_norm2(&frame.e_coords(&e));
    let spread = (&ts[hi].0 - &ts[lo].0).square();
    if (&spread * &pe).cmp_rational(&rational::rat(4)) == Ordering::Greater {
        return Ok(Some(Witness::OffLattice(ts[lo].1, ts[hi].1)));
    }
    Ok(None)
}

fn min_max(v: &[(FieldElement, [i64; 4])]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for k in 1..v.len() {
        if v[k].0.cmp_real(&v[lo].0) == Ordering::Less {
            lo = k;
        }
        if v[k].0.cmp_real(&v[hi].0) == Ordering::Greater {
            hi = k;
        }
    }
    (lo, hi)
}

/// Compares `x` with `q·√m` for `m > 0`.
fn cmp_scaled_sqrt(x: &FieldElement, q: &Rational, m: &FieldElement) -> Ordering {
    let sx = x.sign();
    let sq = if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    };
    if sx != sq {
        return sx.cmp(&sq);
    }
    if sx == 0 {
        return Ordering::Equal;
    }
    let lhs = x.square();
    let rhs = m.scale(&(q * q));
    let o = lhs.cmp_real(&rhs);
    if sx > 0 {
        o
    } else {
        o.reverse()
    }
}

/// A step edge: a staircase-shaped polyline of `E` in the orthonormal
/// coordinates `(t, c)` along an axis `L` and its normal `N` (`L` turned
/// counterclockwise). Cell `k` spans `t ∈ [start + k, start + k + 1)` and
/// the curve runs there at height `c = heights[k]`, joined by vertical
/// segments; it continues horizontally beyond both ends.
#[derive(Clone, Debug)]
pub struct StepCurve {
    axis: Vec2,
    normal: Vec2,
    axis2: FieldElement,
    normal2: FieldElement,
    axis_f: [f64; 2],
    start: i64,
    heights: Vec<Rational>,
    heights_f: Vec<f64>,
}

impl StepCurve {
    fn new(frame: &Frame, axis: Vec2, start: i64, heights: Vec<Rational>) -> Self {
        let normal = frame.e_normal(&axis);
        let axis2 = frame.e_norm2(&axis);
        let normal2 = frame.e_norm2(&normal);
        let e = frame.e_euclidean(&axis);
        let n = libm::sqrt(e[0] * e[0] + e[1] * e[1]);
        let heights_f = heights.iter().map(rational::to_f64).collect();
        StepCurve {
            axis,
            normal,
            axis2,
            normal2,
            axis_f: [e[0] / n, e[1] / n],
            start,
            heights,
            heights_f,
        }
    }

    /// The axis `L` in raw `E` coordinates.
    pub fn axis(&self) -> &Vec2 {
        &self.axis
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    /// Polyline vertices `(t, c)`.
    pub fn vertices(&self) -> Vec<[Rational; 2]> {
        let mut out = Vec::with_capacity(2 * self.heights.len());
        for (k, h) in self.heights.iter().enumerate() {
            let t = self.start + k as i64;
            out.push([rational::rat(t), h.clone()]);
            out.push([rational::rat(t + 1), h.clone()]);
        }
        out
    }

    /// Approximate `(t, c)` of a point given in orthonormal `E` coordinates.
    pub fn coords_f(&self, p: [f64; 2]) -> [f64; 2] {
        let [a, b] = self.axis_f;
        [p[0] * a + p[1] * b, -p[0] * b + p[1] * a]
    }

    /// Orthonormal `E` coordinates of a point given as `(t, c)`.
    pub fn point_f(&self, tc: [f64; 2]) -> [f64; 2] {
        let [a, b] = self.axis_f;
        [tc[0] * a - tc[1] * b, tc[0] * b + tc[1] * a]
    }

    fn cell_f(&self, t: f64) -> usize {
        let k = libm::floor(t) as i64 - self.start;
        k.clamp(0, self.heights.len() as i64 - 1) as usize
    }

    fn cell_exact(&self, frame: &Frame, z: &[i64; 4]) -> usize {
        let p = frame.e_coords(z);
        let t = frame.e_dot(&p, &self.axis);
        let tf = self.coords_f(frame.e_point(z))[0];
        let guess = libm::floor(tf) as i64;
        // the exact cell is guess or a neighbour
        let mut k = guess;
        for cand in [guess - 1, guess, guess + 1] {
            let lo = cmp_scaled_sqrt(&t, &rational::rat(cand), &self.axis2);
            let hi = cmp_scaled_sqrt(&t, &rational::rat(cand + 1), &self.axis2);
            if lo != Ordering::Less && hi == Ordering::Less {
                k = cand;
                break;
            }
        }
        (k - self.start).clamp(0, self.heights.len() as i64 - 1) as usize
    }

    /// Whether `π(z)` lies strictly on the `+N` side of the curve, decided
    /// exactly.
    pub fn is_right(&self, frame: &Frame, z: &[i64; 4]) -> bool {
        let tc = self.coords_f(frame.e_point(z));
        let k = self.cell_f(tc[0]);
        let near_cell = (tc[0] - libm::round(tc[0])).abs() < 1e-7;
        let h = self.heights_f[k];
        if !near_cell && (tc[1] - h).abs() > 1e-7 * (1.0 + h.abs()) {
            return tc[1] > h;
        }
        let k = self.cell_exact(frame, z);
        let c = frame.e_dot(&frame.e_coords(z), &self.normal);
        cmp_scaled_sqrt(&c, &self.heights[k], &self.normal2) == Ordering::Greater
    }

    /// Euclidean distance from a point `(t, c)` to the curve, approximately.
    pub fn distance_f(&self, p: [f64; 2]) -> f64 {
        let n = self.heights.len();
        let mut best = f64::INFINITY;
        for k in 0..n {
            let a = (self.start + k as i64) as f64;
            let b = a + 1.0;
            let lo = if k == 0 { f64::NEG_INFINITY } else { a };
            let hi = if k + 1 == n { f64::INFINITY } else { b };
            let h = self.heights_f[k];
            let dt = if p[0] < lo {
                lo - p[0]
            } else if p[0] > hi {
                p[0] - hi
            } else {
                0.0
            };
            best = best.min(libm::hypot(dt, p[1] - h));
            if k + 1 < n {
                let h2 = self.heights_f[k + 1];
                let (ylo, yhi) = if h < h2 { (h, h2) } else { (h2, h) };
                let dc = if p[1] < ylo {
                    ylo - p[1]
                } else if p[1] > yhi {
                    p[1] - yhi
                } else {
                    0.0
                };
                best = best.min(libm::hypot(p[0] - b, dc));
            }
        }
        best
    }

    pub fn max_height(&self) -> &Rational {
        self.heights.iter().max().expect("nonempty curve")
    }
}

/// A patch following `E + i·s` on band `i`, the bands being separated by
/// step curves. One step is a [`StepPatch`].
#[derive(Clone, Debug)]
pub struct Staircase {
    patch: TilingPatch,
    shift: [Rational; 4],
    clearance: Rational,
    curves: Vec<StepCurve>,
    bands: BTreeMap<[i64; 4], usize>,
    flips: Vec<Vec<[i64; 4]>>,
    deviations: Vec<FieldElement>,
}

pub type StepPatch = Staircase;

impl Staircase {
    pub fn patch(&self) -> &TilingPatch {
        &self.patch
    }

    pub fn shift(&self) -> &[Rational; 4] {
        &self.shift
    }

    pub fn steps(&self) -> usize {
        self.curves.len()
    }

    /// Minimal distance required between a curve and the flips it crosses.
    pub fn clearance(&self) -> &Rational {
        &self.clearance
    }

    pub fn curves(&self) -> &[StepCurve] {
        &self.curves
    }

    /// Band index of each patch vertex: the number of curves it lies right
    /// of.
    pub fn bands(&self) -> &BTreeMap<[i64; 4], usize> {
        &self.bands
    }

    pub fn band(&self, z: &[i64; 4]) -> Option<usize> {
        self.bands.get(z).copied()
    }

    /// Lattice points flipping across curve `j` (0-based): the symmetric
    /// difference of the vertex sets of `E + j·s` and `E + (j+1)·s`.
    pub fn flips(&self, j: usize) -> &[[i64; 4]] {
        &self.flips[j]
    }

    /// Per band, how far its vertices reach beyond the window of `E` along
    /// the window edge that `s` pushes out the most (raw slab units).
    pub fn deviations(&self) -> &[FieldElement] {
        &self.deviations
    }

    /// Smallest distance between a curve and its flips, approximately.
    pub fn min_flip_distance(&self, frame: &Frame) -> f64 {
        let mut best = f64::INFINITY;
        for (curve, flips) in self.curves.iter().zip(&self.flips) {
            for z in flips {
                best = best.min(curve.distance_f(curve.coords_f(frame.e_point(z))));
            }
        }
        best
    }

    /// Whether every vertex of band `i` is a vertex of `E + offset + i·s`.
    pub fn bands_follow_shifts(&self) -> Result<bool> {
        let base = Tube::new(self.patch.slope())?;
        let o = self.patch.slope().offset();
        let tubes: Vec<Tube> = (0..=self.steps())
            .map(|i| base.with_offset(shifted_offset(o, &self.shift, i as i64)))
            .collect();
        Ok(self.bands.iter().all(|(z, &b)| tubes[b].selects(z)))
    }

    /// Whether every vertex lies in the tube of the unshifted slope.
    pub fn is_planar_for(&self, s: &Slope) -> Result<bool> {
        let tube = Tube::new(s)?;
        Ok(self.patch.vertices().iter().all(|z| tube.selects(z)))
    }
}

/// A closed interval of free heights in one cell.
type Interval = (f64, f64);

/// Free intervals of `[lo, hi]` after removing the open intervals `blocked`.
fn free_intervals(lo: f64, hi: f64, mut blocked: Vec<Interval>) -> Vec<Interval> {
    blocked.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    let mut cur = lo;
    for (a, b) in blocked {
        if a > cur {
            out.push((cur, a.min(hi)));
        }
        cur = cur.max(b);
        if cur >= hi {
            break;
        }
    }
    if cur < hi {
        out.push((cur, hi));
    }
    out.retain(|(a, b)| b - a > 1e-3);
    out
}

/// Routes a curve through `c ∈ [lo, hi]` over the cells
/// `[start + k, start + k + 1)`, keeping every obstacle at distance at least
/// `rho`, and preferring height `target`. Returns the heights.
fn route(
    obstacles: &[[f64; 2]],
    start: i64,
    cells: usize,
    (lo, hi): Interval,
    rho: f64,
    target: f64,
) -> Option<Vec<f64>> {
    let mut blocked: Vec<Vec<Interval>> = vec![Vec::new(); cells];
    for p in obstacles {
        if p[1] < lo - rho || p[1] > hi + rho {
            continue;
        }
        // the end cells extend the curve to infinity
        let n = cells as i64;
        let first = (libm::floor(p[0] - rho) as i64 - start).clamp(0, n - 1);
        let last = (libm::floor(p[0] + rho) as i64 - start).clamp(0, n - 1);
        for k in first..=last {
            let a = if k == 0 { f64::NEG_INFINITY } else { (start + k) as f64 };
            let b = if k == n - 1 { f64::INFINITY } else { (start + k + 1) as f64 };
            let dt = if p[0] < a {
                a - p[0]
            } else if p[0] > b {
                p[0] - b
            } else {
                0.0
            };
            if dt < rho {
                let w = libm::sqrt(rho * rho - dt * dt);
                blocked[k as usize].push((p[1] - w, p[1] + w));
            }
        }
    }
    let free: Vec<Vec<Interval>> = blocked
        .into_iter()
        .map(|b| free_intervals(lo, hi, b))
        .collect();
    // layered search: parent[k][n] is an interval of cell k-1 overlapping
    // interval n of cell k
    let mut parent: Vec<Vec<Option<usize>>> = Vec::with_capacity(cells);
    let mut reach: Vec<bool> = vec![true; free[0].len()];
    parent.push(vec![None; free[0].len()]);
    for k in 1..cells {
        let mut p = vec![None; free[k].len()];
        let mut r = vec![false; free[k].len()];
        for (n, &(a, b)) in free[k].iter().enumerate() {
            // prefer the overlapping predecessor closest to the target
            let mut best: Option<(f64, usize)> = None;
            for (m, &(c, d)) in free[k - 1].iter().enumerate() {
                if reach[m] && c.max(a) + 1e-3 < d.min(b) {
                    let dist = (target.clamp(c, d) - target).abs();
                    if best.is_none_or(|(v, _)| dist < v) {
                        best = Some((dist, m));
                    }
                }
            }
            if let Some((_, m)) = best {
                p[n] = Some(m);
                r[n] = true;
            }
        }
        parent.push(p);
        reach = r;
    }
    let last = free[cells - 1]
        .iter()
        .enumerate()
        .filter(|(n, _)| reach[*n])
        .min_by(|(_, x), (_, y)| {
            let dx = (target.clamp(x.0, x.1) - target).abs();
            let dy = (target.clamp(y.0, y.1) - target).abs();
            dx.total_cmp(&dy)
        })?
        .0;
    let mut path = vec![0; cells];
    path[cells - 1] = last;
    for k in (1..cells).rev() {
        path[k - 1] = parent[k][path[k]]?;
    }
    // height of cell k: inside the intervals of cells k-1 and k
    let heights = (0..cells)
        .map(|k| {
            let (mut a, mut b) = free[k][path[k]];
            if k > 0 {
                let (c, d) = free[k - 1][path[k - 1]];
                a = a.max(c);
                b = b.min(d);
            }
            let margin = ((b - a) / 4.0).min(0.25);
            target.clamp(a + margin, b - margin)
        })
        .collect();
    Some(heights)
}

/// Rounds `x` to a nearby dyadic rational with denominator 1024.
fn dyadic(x: f64) -> Rational {
    Rational::new(BigInt::from(libm::round(x * 1024.0) as i64), BigInt::from(1024))
}

/// Builds a single step: `E` on the left of a curve, `E + s` on its right.
pub fn build_step(
    s: &Slope,
    shift: &[Rational; 4],
    r: &Rational,
    radius: &Rational,
) -> Result<StepPatch> {
    build_staircase(s, shift, r, 1, radius)
}

/// Builds a `k`-step staircase over the disk of radius `radius`.
///
/// Curve `j` separates the tilings of `E + (j-1)·s` and `E + j·s` and stays
/// at distance at least `r + 4` from every lattice point whose membership
/// differs between them. A pattern of radius `r/2` about a vertex only
/// involves vertices within `r/2 + 2` of it, so every such pattern meeting
/// the curve is a pattern of either tiling.
pub fn build_staircase(
    s: &Slope,
    shift: &[Rational; 4],
    r: &Rational,
    k: usize,
    radius: &Rational,
) -> Result<Staircase> {
    if k == 0 {
        return Err(Error::InvalidParameter("a staircase needs at least one step"));
    }
    if r.is_negative() || !radius.is_positive() {
        return Err(Error::InvalidParameter("negative pattern or patch radius"));
    }
    let clearance = r + rational::rat(4);
    let rho = rational::to_f64(&clearance) + 1e-6;
    let rf = rational::to_f64(radius);
    let reach = rf + rho + 2.0;
    let ss = shifted_points(s, shift, &dyadic(reach))?;
    let subperiods = subperiod::analyze(s)?;
    let base = Tube::new(s)?;
    let frame = base.frame().clone();

    // direction of the flip lines of the first type with one subperiod
    let line_type = (1..=4).find(|&i| {
        subperiod::of_type(&subperiods, i).len() == 1 && !ss.class(i).is_empty()
    });
    let axis = match line_type {
        Some(i) => frame.e_coords_field(&lift_of(s, subperiod::of_type(&subperiods, i)[0])?),
        None => frame.e_coords_field(&frame.e_basis()[0]),
    };

    let o = s.offset();
    let tubes: Vec<Tube> = (0..=k)
        .map(|i| base.with_offset(shifted_offset(o, shift, i as i64)))
        .collect();
    let selected: Vec<BTreeSet<[i64; 4]>> = tubes
        .iter()
        .map(|t| select_vertices(t, reach + SEARCH_MARGIN, |_| Ok(())))
        .collect::<Result<_>>()?;

    let start = -(libm::ceil(reach) as i64);
    let cells = (2 * -start) as usize;
    let probe = StepCurve::new(&frame, axis.clone(), start, vec![rational::rat(0)]);
    let mut curves: Vec<StepCurve> = Vec::with_capacity(k);
    let mut flips: Vec<Vec<[i64; 4]>> = Vec::with_capacity(k);
    let mut lower = f64::NEG_INFINITY;
    for j in 1..=k {
        let before = &selected[j - 1];
        let after = &selected[j];
        let flip: Vec<[i64; 4]> = before.symmetric_difference(after).copied().collect();
        let obstacles: Vec<[f64; 2]> = flip
            .iter()
            .map(|z| probe.coords_f(frame.e_point(z)))
            .collect();
        // heights of the flip lines, which bound the candidate stripes
        let mut line_heights: Vec<f64> = match line_type {
            Some(i) => after
                .difference(before)
                .filter(|z| !tubes[j - 1].in_strip(i - 1, z))
                .map(|z| probe.coords_f(frame.e_point(z))[1])
                .collect(),
            None => Vec::new(),
        };
        line_heights.sort_by(f64::total_cmp);
        let target = rf * (2.0 * j as f64 - k as f64 - 1.0) / (k as f64 + 1.0);
        let mut stripes = stripes_between(&line_heights, -reach, reach);
        stripes.retain(|st| st.1 > lower + 1.0);
        for st in stripes.iter_mut() {
            st.0 = st.0.max(lower + 1.0);
        }
        stripes.sort_by(|a, b| {
            let da = (target.clamp(a.0, a.1) - target).abs();
            let db = (target.clamp(b.0, b.1) - target).abs();
            da.total_cmp(&db)
        });
        let heights = stripes
            .iter()
            .find_map(|&st| route(&obstacles, start, cells, st, rho, target.clamp(st.0, st.1)))
            .ok_or_else(|| {
                Error::NoCorridor(format!(
                    "step {j}: {} flips block every stripe within radius {reach:.1}",
                    flip.len()
                ))
            })?;
        let curve = StepCurve::new(
            &frame,
            axis.clone(),
            start,
            heights.into_iter().map(dyadic).collect(),
        );
        lower = rational::to_f64(curve.max_height());
        curves.push(curve);
        flips.push(flip);
    }

    let band_of = |z: &[i64; 4]| curves.iter().filter(|c| c.is_right(&frame, z)).count();
    let mut mixed = BTreeSet::new();
    for (b, set) in selected.iter().enumerate() {
        mixed.extend(set.iter().filter(|z| band_of(z) == b).copied());
    }
    let patch = patch_from_vertices(s, &frame, radius, &mixed);
    let bands: BTreeMap<[i64; 4], usize> =
        patch.vertices().iter().map(|z| (*z, band_of(z))).collect();
    let deviations = deviations(&base, shift, &bands, k);
    Ok(Staircase {
        patch,
        shift: shift.clone(),
        clearance,
        curves,
        bands,
        flips,
        deviations,
    })
}

/// Gaps between consecutive clusters of line heights (points farther than 1
/// apart start a new line), plus the two outer regions, within `[lo, hi]`.
fn stripes_between(heights: &[f64], lo: f64, hi: f64) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut cur = lo;
    let mut last = f64::NEG_INFINITY;
    for &h in heights {
        if h - last > 1.0 && h > cur {
            out.push((cur, h.min(hi)));
        }
        cur = cur.max(h);
        last = h;
    }
    if cur < hi {
        out.push((cur, hi));
    }
    out.retain(|(a, b)| b > a);
    out
}

/// Picks the window edge which the shift pushes out the most, and measures
/// for each band the largest excess of its vertices beyond that edge of the
/// unshifted window.
fn deviations(
    base: &Tube,
    shift: &[Rational; 4],
    bands: &BTreeMap<[i64; 4], usize>,
    k: usize,
) -> Vec<FieldElement> {
    let frame = base.frame();
    let window = base.window();
    let sp = frame.perp_coords_rational(shift);
    let mut best: Option<(f64, usize, bool)> = None;
    for j in 0..4 {
        let dir = window.slab_direction(j);
        let push = cross(dir, &sp);
        let len = libm::sqrt(frame.perp_dot(dir, dir).to_f64());
        let score = libm::fabs(push.to_f64()) / len;
        if !push.is_zero() && best.is_none_or(|(v, _, _)| score > v) {
            best = Some((score, j, push.is_positive()));
        }
    }
    let desc = frame.descriptor();
    let Some((_, j, up)) = best else {
        return vec![FieldElement::zero(desc); k + 1];
    };
    let (lo, hi) = window.slab_bounds(j);
    let mut out: Vec<Option<FieldElement>> = vec![None; k + 1];
    for (z, &b) in bands {
        let v = base.slab_value(j, z);
        let excess = if up { &v - hi } else { lo - &v };
        if out[b]
            .as_ref()
            .is_none_or(|m| excess.cmp_real(m) == Ordering::Greater)
        {
            out[b] = Some(excess);
        }
    }
    out.into_iter()
        .map(|m| m.unwrap_or_else(|| FieldElement::zero(desc)))
        .collect()
}

/// The `r`-atlas of the union of the planar patches of `E + i·s` for
/// `i = 0..=k`, the reference against which a staircase is compared.
pub fn planar_atlas(
    s: &Slope,
    shift: &[Rational; 4],
    k: usize,
    r: &Rational,
    radius: &Rational,
) -> Result<BTreeSet<Pattern>> {
    let frame = Frame::new(s)?;
    let mut out = BTreeSet::new();
    for i in 0..=k {
        let shifted = s.with_offset(shifted_offset(s.offset(), shift, i as i64));
        let patch = crate::tiling::generate_patch(&shifted, radius)?;
        out.extend(r_atlas_with_frame(&frame, &patch, r)?);
    }
    Ok(out)
}

/// The `r`-atlas of a staircase patch.
pub fn staircase_atlas(st: &Staircase, r: &Rational) -> Result<BTreeSet<Pattern>> {
    let frame = Frame::new(st.patch.slope())?;
    r_atlas_with_frame(&frame, &st.patch, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, ratio};
    use crate::field::FieldDescriptor;
    use crate::slope::{ammann_beenker, biquadratic_example};

    fn shift(c: [(i64, i64); 4]) -> [Rational; 4] {
        c.map(|(n, d)| ratio(n, d))
    }

    fn ab_shift() -> [Rational; 4] {
        shift([(1, 20), (1, 33), (1, 47), (1, 61)])
    }

    fn e4_shift(den: i64) -> [Rational; 4] {
        shift([(0, 1), (0, 1), (0, 1), (1, den)])
    }

    fn el(c: [i64; 4]) -> FieldElement {
        let d = FieldDescriptor::new(&[2, 3]).unwrap();
        FieldElement::from_coeffs(d, c.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    /// u = (√2, 1, 1, 0), v = (√3, 0, 1, 1): two subperiods of type 1.
    fn two_of_type_one() -> Slope {
        let z = [0, 0, 0, 0];
        let one = [1, 0, 0, 0];
        Slope::new(
            [el([0, 1, 0, 0]), el(one), el(one), el(z)],
            [el([0, 0, 1, 0]), el(z), el(one), el(one)],
            [ratio(1, 3), rat(0), rat(0), ratio(-1, 200)],
        )
        .unwrap()
    }

    /// u = (√2, 1, 0, √3), v = (0, √3, 1, √2): no subperiod.
    fn generic() -> Slope {
        let z = [0, 0, 0, 0];
        let one = [1, 0, 0, 0];
        let r2 = [0, 1, 0, 0];
        let r3 = [0, 0, 1, 0];
        Slope::new(
            [el(r2), el(one), el(z), el(r3)],
            [el(z), el(r3), el(one), el(r2)],
            [ratio(1, 7), ratio(2, 11), ratio(3, 13), ratio(5, 17)],
        )
        .unwrap()
    }

    #[test]
    fn points_enter_the_shifted_tube() {
        let s = ammann_beenker();
        let sh = ab_shift();
        let ss = shifted_points(&s, &sh, &rat(40)).unwrap();
        assert!(!ss.points().is_empty());
        let before = Tube::new(&s).unwrap();
        let after = before.with_offset(shifted_offset(s.offset(), &sh, 1));
        for z in ss.points() {
            assert!(after.selects(z) && !before.selects(z));
        }
        for z in ss.exiting() {
            assert!(!after.selects(z) && before.selects(z));
        }
        assert!(ss.is_covering());
    }

    #[test]
    fn ab_lines_for_all_types() {
        let s = ammann_beenker();
        let sp = subperiod::analyze(&s).unwrap();
        let ss = shifted_points(&s, &ab_shift(), &rat(100)).unwrap();
        let rep = verify_structure(&ss, &s, &sp, &rat(3)).unwrap();
        assert!(rep.passed());
        for c in &rep.clauses {
            assert_eq!(c.clause, Some(Clause::Lines));
            assert!(c.points > 0 && c.lines > 0, "type {}", c.kind);
        }
    }

    #[test]
    fn halving_makes_lines_sparser() {
        let s = ammann_beenker();
        let sp = subperiod::analyze(&s).unwrap();
        let big = shift([(1, 20), (1, 33), (1, 47), (1, 61)]);
        let small = shift([(1, 40), (1, 66), (1, 94), (1, 122)]);
        let a = shifted_points(&s, &big, &rat(100)).unwrap();
        let b = shifted_points(&s, &small, &rat(100)).unwrap();
        assert!(b.points().len() < a.points().len());
        let ra = verify_structure(&a, &s, &sp, &rat(3)).unwrap();
        let rb = verify_structure(&b, &s, &sp, &rat(3)).unwrap();
        for (x, y) in ra.clauses.iter().zip(&rb.clauses) {
            assert!(y.lines <= x.lines);
            if let (Some(gx), Some(gy)) = (&x.min_gap2, &y.min_gap2) {
                assert!(gy.cmp_real(gx) != Ordering::Less);
            }
        }
    }

    #[test]
    fn shift_along_an_axis_empties_its_class() {
        let s = biquadratic_example();
        let sp = subperiod::analyze(&s).unwrap();
        let ss = shifted_points(&s, &e4_shift(50), &rat(100)).unwrap();
        assert!(ss.class(4).is_empty());
        assert!(!ss.class(3).is_empty());
        let rep = verify_structure(&ss, &s, &sp, &rat(3)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.clauses[0].clause, Some(Clause::Sparse));
        assert_eq!(rep.clauses[2].clause, Some(Clause::Lines));
        assert_eq!(rep.clauses[3].lines, 0);
    }

    #[test]
    fn large_shift_gives_a_close_pair() {
        let s = biquadratic_example();
        let sp = subperiod::analyze(&s).unwrap();
        let ss = shifted_points(&s, &e4_shift(20), &rat(100)).unwrap();
        let rep = verify_structure(&ss, &s, &sp, &rat(3)).unwrap();
        assert!(!rep.passed());
        let Some(Witness::ClosePair(a, b)) = &rep.clauses[0].witness else {
            panic!("expected a close pair");
        };
        let frame = Frame::new(&s).unwrap();
        let d = frame.e_norm2(&frame.e_coords(&diff(a, b)));
        assert_eq!(d.cmp_rational(&rat(9)), Ordering::Less);
    }

    #[test]
    fn oversized_shift_is_rejected() {
        let s = ammann_beenker();
        let sh = shift([(1, 2), (1, 3), (2, 3), (1, 5)]);
        match shifted_points(&s, &sh, &rat(30)) {
            Err(Error::ShiftTooLarge { first, second, .. }) => assert_ne!(first, second),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sparse_after_shrinking() {
        let s = generic();
        assert!(subperiod::analyze(&s).unwrap().is_empty());
        let mut den = 10;
        let passed = loop {
            let sh = shift([(1, den), (2, 3 * den), (1, 2 * den), (2, 5 * den)]);
            let ss = shifted_points(&s, &sh, &rat(100)).unwrap();
            let rep = verify_structure(&ss, &s, &[], &rat(3)).unwrap();
            if rep.passed() || den > 1000 {
                break rep.passed().then_some(den);
            }
            den *= 2;
        };
        let den = passed.expect("a small enough shift");
        assert!(den > 10);
    }

    #[test]
    fn lattice_clause() {
        let s = two_of_type_one();
        let sp = subperiod::analyze(&s).unwrap();
        assert_eq!(subperiod::of_type(&sp, 1).len(), 2);
        let sh = shift([(1, 40), (1, 60), (1, 80), (1, 100)]);
        let ss = shifted_points(&s, &sh, &rat(40)).unwrap();
        assert!(!ss.class(1).is_empty());
        let rep = verify_structure(&ss, &s, &sp, &rat(3)).unwrap();
        assert_eq!(rep.clauses[0].clause, Some(Clause::Lattice));
        assert!(rep.passed());

        // a point off the lattice plane is caught
        let mut bad = ss.clone();
        let mut z = bad.classes[0][0];
        z[1] += 1;
        bad.classes[0].push(z);
        let rep = verify_structure(&bad, &s, &sp, &rat(3)).unwrap();
        assert!(matches!(rep.clauses[0].witness, Some(Witness::OffPlane(..))));
    }

    #[test]
    fn scaled_sqrt_comparison() {
        let q = FieldDescriptor::quadratic(2).unwrap();
        let x = FieldElement::from_int(q, 3);
        let two = FieldElement::from_int(q, 2);
        // 3 vs 2√2 and 3 vs (11/5)√2
        assert_eq!(cmp_scaled_sqrt(&x, &rat(2), &two), Ordering::Greater);
        assert_eq!(cmp_scaled_sqrt(&x, &ratio(11, 5), &two), Ordering::Less);
        assert_eq!(cmp_scaled_sqrt(&-&x, &ratio(-11, 5), &two), Ordering::Greater);
        assert_eq!(cmp_scaled_sqrt(&x, &rat(-1), &two), Ordering::Greater);
    }

    #[test]
    fn routing_avoids_obstacles() {
        let obstacles = [[0.5, 0.0], [3.0, 4.0], [-4.0, -2.0]];
        let h = route(&obstacles, -10, 20, (-20.0, 20.0), 3.0, 0.0).unwrap();
        let frame = Frame::new(&ammann_beenker()).unwrap();
        let axis = frame.e_coords_field(&frame.e_basis()[0]);
        let c = StepCurve::new(&frame, axis, -10, h.into_iter().map(dyadic).collect());
        for p in obstacles {
            assert!(c.distance_f(p) >= 3.0 - 1e-9);
        }
        // a wall of obstacles cannot be crossed
        let wall: Vec<[f64; 2]> = (-25..25).map(|k| [0.0, k as f64]).collect();
        assert!(route(&wall, -10, 20, (-20.0, 20.0), 1.0, 0.0).is_none());
    }

    #[test]
    fn free_interval_subtraction() {
        let f = free_intervals(0.0, 10.0, vec![(2.0, 3.0), (-1.0, 1.0), (2.5, 4.0)]);
        assert_eq!(f, vec![(1.0, 2.0), (4.0, 10.0)]);
        assert!(free_intervals(0.0, 1.0, vec![(-1.0, 2.0)]).is_empty());
    }

    #[test]
    fn one_step() {
        let s = biquadratic_example();
        let sh = e4_shift(200);
        let st = build_step(&s, &sh, &rat(2), &rat(20)).unwrap();
        assert_eq!(st.steps(), 1);
        let frame = Frame::new(&s).unwrap();
        assert!(st.min_flip_distance(&frame) >= 6.0 - 1e-6);
        assert!(st.bands_follow_shifts().unwrap());
        // left of the curve the patch is the unshifted patch
        let planar = crate::tiling::generate_patch(&s, &rat(20)).unwrap();
        let curve = &st.curves()[0];
        for z in planar.vertices() {
            if !curve.is_right(&frame, z) {
                assert_eq!(st.band(z), Some(0), "{z:?}");
            }
        }
        for (z, &b) in st.bands() {
            assert_eq!(b == 1, curve.is_right(&frame, z));
        }
    }

    #[test]
    fn staircase_deviation_grows() {
        let s = biquadratic_example();
        let st = build_staircase(&s, &e4_shift(200), &rat(2), 3, &rat(30)).unwrap();
        assert_eq!(st.curves().len(), 3);
        for w in st.curves().windows(2) {
            assert!(w[1].heights().iter().min() > Some(w[0].max_height()));
        }
        let d = st.deviations();
        assert_eq!(d.len(), 4);
        for w in d.windows(2) {
            assert_eq!(w[0].cmp_real(&w[1]), Ordering::Less);
        }
        assert!(!st.is_planar_for(&s).unwrap());
        assert!(st.bands_follow_shifts().unwrap());
    }

    #[test]
    fn zero_steps_rejected() {
        let s = biquadratic_example();
        assert!(build_staircase(&s, &e4_shift(200), &rat(2), 0, &rat(10)).is_err());
    }
}
