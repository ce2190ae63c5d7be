//! Coincidences: points of the window lying on the projections of three or
//! more open unit lattice segments, and the quadratic equation each one
//! imposes on the Grassmann coordinates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::array;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::determination::{plucker_form, SubperiodSystem};
use crate::field::rational::Rational;
use crate::field::FieldElement;
use crate::poly::{ternary_finite_intersection, QuadraticForm};
use crate::slope::{pair_index, GrassmannCoords, Slope};
use crate::subperiod::{self, Subperiod};
use crate::tiling::{cross, sub2, Frame, Vec2, Window};
use crate::{Error, Result};

/// The open segment `base + (0,1)·e_dir` (0-based `dir`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeSegment {
    pub base: [i64; 4],
    pub dir: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coincidence {
    /// All segments through the point, sorted.
    pub segments: Vec<LatticeSegment>,
    /// Window coordinates of the common point.
    pub point: Vec2,
}

impl Coincidence {
    /// Distinct segment directions, increasing.
    pub fn directions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.segments.iter().map(|s| s.dir).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Lexicographically smallest segment of a given direction.
    pub fn segment(&self, dir: usize) -> Option<&LatticeSegment> {
        self.segments.iter().find(|s| s.dir == dir)
    }
}

struct Projected {
    seg: LatticeSegment,
    start: Vec2,
    start_f: [f64; 2],
}

/// All coincidences formed by segments with `|base|∞ ≤ radius` whose
/// projections meet the window, in lexicographic order of their segments.
///
/// Segments through a common point are found by exact pairwise
/// intersection; coincident points are grouped by exact equality.
pub fn find_coincidences(s: &Slope, radius: u32) -> Result<Vec<Coincidence>> {
    let frame = Frame::new(s)?;
    let window = Window::new(&frame);
    let dirs: [Vec2; 4] = array::from_fn(|k| window.generator(k).clone());
    let dirs_f: [[f64; 2]; 4] = dirs.each_ref().map(|d| [d[0].to_f64(), d[1].to_f64()]);
    let hull: Vec<[f64; 2]> = window.vertices().iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect();

    let r = radius as i64;
    let side = 2 * r + 1;
    let mut segs = Vec::new();
    for n in 0..side.pow(4) {
        let mut base = [0i64; 4];
        let mut m = n;
        for b in base.iter_mut() {
            *b = m % side - r;
            m /= side;
        }
        let start_f = frame.perp_point_f64(base.map(|x| x as f64));
        for dir in 0..4 {
            if segment_meets_polygon_f(start_f, dirs_f[dir], &hull) {
                let seg = LatticeSegment { base, dir };
                segs.push(Projected { seg, start: frame.perp_coords(&base), start_f });
            }
        }
    }

    let mut points: BTreeMap<Vec<Rational>, (Vec2, Vec<LatticeSegment>)> = BTreeMap::new();
    for a in 0..segs.len() {
        for b in a + 1..segs.len() {
            let (sa, sb) = (&segs[a], &segs[b]);
            let (i, j) = (sa.seg.dir, sb.seg.dir);
            if i == j || !open_intersection_f(sa.start_f, dirs_f[i], sb.start_f, dirs_f[j]) {
                continue;
            }
            let Some(p) = open_intersection(&sa.start, &dirs[i], &sb.start, &dirs[j]) else {
                continue;
            };
            let key: Vec<Rational> = p.iter().flat_map(|x| x.coeffs().iter().cloned()).collect();
            let entry = points.entry(key).or_insert_with(|| (p, Vec::new()));
            for seg in [sa.seg, sb.seg] {
                if !entry.1.contains(&seg) {
                    entry.1.push(seg);
                }
            }
        }
    }

    let mut out: Vec<Coincidence> = points
        .into_values()
        .filter(|(p, _)| window.contains(p))
        .map(|(point, mut segments)| {
            segments.sort();
            Coincidence { segments, point }
        })
        .filter(|c| c.directions().len() >= 3)
        .collect();
    out.sort_by(|x, y| x.segments.cmp(&y.segments));
    Ok(out)
}

fn segment_meets_polygon_f(p: [f64; 2], d: [f64; 2], hull: &[[f64; 2]]) -> bool {
    // clip t ∈ [0, 1] against each edge half-plane, with slack
    let (mut lo, mut hi) = (-1e-9, 1.0 + 1e-9);
    for k in 0..hull.len() {
        let a = hull[k];
        let b = hull[(k + 1) % hull.len()];
        let e = [b[0] - a[0], b[1] - a[1]];
        let v0 = e[0] * (p[1] - a[1]) - e[1] * (p[0] - a[0]);
        let dv = e[0] * d[1] - e[1] * d[0];
        let slack = 1e-9;
        if dv.abs() < 1e-15 {
            if v0 < -slack {
                return false;
            }
        } else {
            let t = -(v0 + slack) / dv;
            if dv > 0.0 {
                lo = f64::max(lo, t);
            } else {
                hi = f64::min(hi, t);
            }
        }
    }
    lo <= hi
}

fn open_intersection_f(p: [f64; 2], d: [f64; 2], q: [f64; 2], e: [f64; 2]) -> bool {
    let den = d[0] * e[1] - d[1] * e[0];
    let w = [q[0] - p[0], q[1] - p[1]];
    let t = (w[0] * e[1] - w[1] * e[0]) / den;
    let u = (w[0] * d[1] - w[1] * d[0]) / den;
    let eps = 1e-7;
    t > -eps && t < 1.0 + eps && u > -eps && u < 1.0 + eps
}

/// Common point of the open segments `p + (0,1)d` and `q + (0,1)e`.
fn open_intersection(p: &Vec2, d: &Vec2, q: &Vec2, e: &Vec2) -> Option<Vec2> {
    let den = cross(d, e);
    let w = sub2(q, p);
    let tn = cross(&w, e);
    let un = cross(&w, d);
    let sd = den.sign();
    let open = |num: &FieldElement| num.sign() * sd > 0 && (num - &den).sign() * sd < 0;
    if !open(&tn) || !open(&un) {
        return None;
    }
    let t = tn.try_div(&den).ok()?;
    Some([&p[0] + &(&t * &d[0]), &p[1] + &(&t * &d[1])])
}

/// The quadratic relation imposed by a coincidence of three segments in the
/// directions other than `special`:
///
/// `a·G14G23 − b·G13G24 + c·G12G34 + d·G24G34 + e·G14G34 + f·G14G24 = 0`
///
/// written for relabelled coordinates where the three directions become
/// 1, 2, 3 (in increasing order) and `special` becomes 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceEquation {
    /// 1-based index playing the role of 4.
    pub special: usize,
    /// `roles[k]` is the 0-based coordinate playing role `k + 1`.
    pub roles: [usize; 4],
    pub coeffs: [BigInt; 6],
}

/// The six products of the equation, as role pairs and signs, in the order
/// `a, b, c, d, e, f`.
const TERMS: [(i64, (usize, usize), (usize, usize)); 6] = [
    (1, (0, 3), (1, 2)),
    (-1, (0, 2), (1, 3)),
    (1, (0, 1), (2, 3)),
    (1, (1, 3), (2, 3)),
    (1, (0, 3), (2, 3)),
    (1, (0, 3), (1, 3)),
];

impl CoincidenceEquation {
    fn relabelled(&self, g: &GrassmannCoords, a: usize, b: usize) -> FieldElement {
        g.get(self.roles[a], self.roles[b])
    }

    pub fn evaluate(&self, g: &GrassmannCoords) -> FieldElement {
        let mut acc = FieldElement::zero(g.descriptor());
        for (c, &(sign, p, q)) in self.coeffs.iter().zip(&TERMS) {
            if c.is_zero() {
                continue;
            }
            let term = &self.relabelled(g, p.0, p.1) * &self.relabelled(g, q.0, q.1);
            acc += &term.scale_int(&(c * sign));
        }
        acc
    }

    /// The equation as a quadratic form in `(G12, …, G34)`.
    pub fn quadratic_form(&self) -> QuadraticForm {
        let mut q = QuadraticForm::zero(6);
        let coord = |a: usize, b: usize| {
            let (x, y) = (self.roles[a], self.roles[b]);
            (pair_index(x, y), if x < y { 1 } else { -1 })
        };
        for (c, &(sign, p, r)) in self.coeffs.iter().zip(&TERMS) {
            if c.is_zero() {
                continue;
            }
            let (i, si) = coord(p.0, p.1);
            let (j, sj) = coord(r.0, r.1);
            q.add_monomial(i, j, &Rational::from_integer(c * (sign * si * sj)));
        }
        q
    }
}

/// Synthesizes the equation of a coincidence from its three lowest
/// directions; the remaining index is special.
pub fn coincidence_equation(s: &Slope, c: &Coincidence) -> Result<CoincidenceEquation> {
    let dirs = c.directions();
    if dirs.len() < 3 {
        return Err(Error::IndexPattern("fewer than three segment directions"));
    }
    let special = (0..4).find(|k| !dirs[..3].contains(k)).expect("one index left");
    coincidence_equation_with_roles(s, c, [dirs[0], dirs[1], dirs[2], special])
}

/// Same, with an explicit assignment of coordinates to the roles 1–4.
pub fn coincidence_equation_with_roles(
    s: &Slope,
    c: &Coincidence,
    roles: [usize; 4],
) -> Result<CoincidenceEquation> {
    let mut sorted = roles;
    sorted.sort_unstable();
    if sorted != [0, 1, 2, 3] {
        return Err(Error::IndexPattern("roles must be a permutation"));
    }
    let base = |role: usize| -> Result<[i64; 4]> {
        let seg = c.segment(roles[role]).ok_or(Error::IndexPattern("no segment in a required direction"))?;
        Ok(roles.map(|k| seg.base[k]))
    };
    // bases in role coordinates: (x,a,b,c), (d,y,e,f), (g,h,z,i)
    let [_, a, b, cc] = base(0)?;
    let [d, _, e, f] = base(1)?;
    let [g, h, _, i] = base(2)?;
    let coeffs = [0, cc - f, cc - i, d - g, h - a, b - e].map(BigInt::from);
    let eq = CoincidenceEquation { special: roles[3] + 1, roles, coeffs };
    debug_assert!(eq.evaluate(&s.grassmann()).is_zero());
    Ok(eq)
}

/// Whether three subperiods of distinct types together with the Plücker
/// relation and a coincidence equation have finitely many solutions.
pub fn zero_dimensional_with_coincidence(subperiods: &[Subperiod], eq: &CoincidenceEquation) -> Result<bool> {
    if subperiods.len() != 3 || subperiod::count_types(subperiods) != 3 {
        return Err(Error::SubperiodTypes);
    }
    let sys = SubperiodSystem::from_subperiods(subperiods);
    if sys.rank() != 3 {
        return Err(Error::DependentSubperiods);
    }
    let basis: Vec<Vec<Rational>> = sys
        .kernel()
        .iter()
        .map(|w| w.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let p = plucker_form().restrict(&basis);
    let q = eq.quadratic_form().restrict(&basis);
    Ok(ternary_finite_intersection(&p, &q))
}
