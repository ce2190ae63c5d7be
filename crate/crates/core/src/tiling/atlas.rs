//! r-maps and r-atlases.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Signed;

use super::geometry::Frame;
use super::patch::{Ball, Face, TilingPatch};
use crate::field::rational::{self, Rational};
use crate::{Error, Result};

/// A finite set of faces up to integer translation, stored with its
/// lexicographically smallest base at the origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    faces: Vec<Face>,
}

impl Pattern {
    pub fn new(faces: impl IntoIterator<Item = Face>) -> Self {
        let faces: BTreeSet<Face> = faces.into_iter().collect();
        let Some(min) = faces.iter().map(|f| f.base).min() else {
            return Pattern { faces: Vec::new() };
        };
        let t = min.map(|x| -x);
        Pattern {
            faces: faces
                .iter()
                .map(|f| f.translated(&t))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Whether some translate of `self` is contained in `other`.
    pub fn embeds_in(&self, other: &Pattern) -> bool {
        let Some(first) = self.faces.first() else {
            return true;
        };
        let set: BTreeSet<&Face> = other.faces.iter().collect();
        other
            .faces
            .iter()
            .filter(|g| g.i == first.i && g.j == first.j)
            .any(|g| {
                let t: [i64; 4] = core::array::from_fn(|k| g.base[k] - first.base[k]);
                self.faces.iter().all(|f| set.contains(&f.translated(&t)))
            })
    }
}

/// Faces bucketed on a square grid by the float position of their center.
struct FaceGrid<'a> {
    cell: f64,
    buckets: BTreeMap<(i64, i64), Vec<&'a Face>>,
}

impl<'a> FaceGrid<'a> {
    fn new(frame: &Frame, faces: impl Iterator<Item = &'a Face>) -> Self {
        let cell = 2.0;
        let mut buckets: BTreeMap<(i64, i64), Vec<&Face>> = BTreeMap::new();
        for f in faces {
            let c = face_center(frame, f);
            buckets.entry(key(c, cell)).or_default().push(f);
        }
        FaceGrid { cell, buckets }
    }

    fn near(&self, p: [f64; 2], reach: f64) -> impl Iterator<Item = &&'a Face> {
        let n = libm::ceil(reach / self.cell) as i64;
        let (cx, cy) = key(p, self.cell);
        (cx - n..=cx + n)
            .flat_map(move |x| (cy - n..=cy + n).map(move |y| (x, y)))
            .filter_map(|k| self.buckets.get(&k))
            .flatten()
    }
}

fn key(p: [f64; 2], cell: f64) -> (i64, i64) {
    (
        libm::floor(p[0] / cell) as i64,
        libm::floor(p[1] / cell) as i64,
    )
}

fn face_center(frame: &Frame, f: &Face) -> [f64; 2] {
    let mut x = f.base.map(|v| v as f64);
    x[f.i] += 0.5;
    x[f.j] += 0.5;
    frame.e_point_f64(x)
}

/// The r-map centred at the vertex `c`: faces meeting the closed ball of
/// diameter `r` about `π(c)`.
fn r_map(frame: &Frame, grid: &FaceGrid<'_>, c: &[i64; 4], r: &Rational) -> Pattern {
    let half = r / Rational::from_integer(2.into());
    let mut ball = Ball::new(frame.e_coords(c), frame.e_point(c), half.clone());
    ball.lattice_center = Some(*c);
    // a tile meeting the ball has its center within r/2 + 1
    let reach = rational::to_f64(&half) + 1.0 + 1e-6;
    Pattern::new(
        grid.near(frame.e_point(c), reach)
            .filter(|f| ball.meets(frame, f))
            .map(|f| **f),
    )
}

/// All r-maps of the patch centred at vertices `z` with
/// `|π(z)| ≤ radius − r/2`, so that every such map lies inside the patch.
pub fn r_atlas(p: &TilingPatch, r: &Rational) -> Result<BTreeSet<Pattern>> {
    let frame = Frame::new(p.slope())?;
    r_atlas_with_frame(&frame, p, r)
}

pub(crate) fn r_atlas_with_frame(
    frame: &Frame,
    p: &TilingPatch,
    r: &Rational,
) -> Result<BTreeSet<Pattern>> {
    let half = r / Rational::from_integer(2.into());
    let reach = p.radius() - &half;
    if reach.is_negative() || r.is_negative() {
        return Err(Error::PatchTooSmall {
            radius: rational::to_string(p.radius()),
            r: rational::to_string(r),
        });
    }
    let reach2 = &reach * &reach;
    let reach_f = rational::to_f64(&reach);
    let grid = FaceGrid::new(frame, p.faces().iter());
    let mut out = BTreeSet::new();
    for c in p.vertices() {
        let pc = frame.e_point(c);
        let d = libm::sqrt(pc[0] * pc[0] + pc[1] * pc[1]);
        if d > reach_f + 1e-9 {
            continue;
        }
        if d > reach_f - 1e-9
            && frame.e_norm2(&frame.e_coords(c)).cmp_rational(&reach2) == Ordering::Greater
        {
            continue;
        }
        out.insert(r_map(frame, &grid, c, r));
    }
    Ok(out)
}
