//! SVG figures of patches, flip sets and staircases. Coordinates are the
//! orthonormal coordinates of `E`, with the y axis pointing up.

use std::fmt::Write;

use octa_core::flips::{ShiftSet, Staircase};
use octa_core::slope::PAIRS;
use octa_core::tiling::{Frame, TilingPatch};

const TILE_COLORS: [&str; 6] = ["#e8c170", "#8fb8de", "#d98c8c", "#9cc69b", "#c2a5cf", "#f0e4a8"];
const CLASS_COLORS: [&str; 4] = ["#c0392b", "#2471a3", "#1e8449", "#7d3c98"];
const BAND_COLORS: [&str; 2] = ["#f4f1ea", "#dfe8f1"];

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Collects shapes and tracks their bounding box.
struct Canvas {
    body: String,
    lo: [f64; 2],
    hi: [f64; 2],
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            body: String::new(),
            lo: [f64::INFINITY; 2],
            hi: [f64::NEG_INFINITY; 2],
        }
    }

    fn see(&mut self, p: [f64; 2]) {
        for k in 0..2 {
            self.lo[k] = self.lo[k].min(p[k]);
            self.hi[k] = self.hi[k].max(p[k]);
        }
    }

    fn points(&mut self, pts: &[[f64; 2]]) -> String {
        let mut out = String::new();
        for (n, p) in pts.iter().enumerate() {
            self.see(*p);
            if n > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", num(p[0]), num(-p[1]));
        }
        out
    }

    fn polygon(&mut self, pts: &[[f64; 2]], fill: &str) {
        let p = self.points(pts);
        let _ = writeln!(self.body, r##"  <polygon points="{p}" fill="{fill}" stroke="#333" stroke-width="0.03"/>"##);
    }

    fn polyline(&mut self, pts: &[[f64; 2]], stroke: &str, width: f64) {
        let p = self.points(pts);
        let _ = writeln!(
            self.body,
            r#"  <polyline points="{p}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            num(width)
        );
    }

    fn circle(&mut self, c: [f64; 2], r: f64, fill: &str) {
        self.see([c[0] - r, c[1] - r]);
        self.see([c[0] + r, c[1] + r]);
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            num(c[0]),
            num(-c[1]),
            num(r)
        );
    }

    fn finish(self) -> String {
        let (x, y, w, h) = if self.lo[0].is_finite() {
            let m = 0.5;
            (
                self.lo[0] - m,
                -self.hi[1] - m,
                self.hi[0] - self.lo[0] + 2.0 * m,
                self.hi[1] - self.lo[1] + 2.0 * m,
            )
        } else {
            (0.0, 0.0, 1.0, 1.0)
        };
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            num(x),
            num(y),
            num(w),
            num(h),
            self.body
        )
    }
}

fn tiles(c: &mut Canvas, frame: &Frame, patch: &TilingPatch, fill: impl Fn(usize, &[i64; 4]) -> &'static str) {
    for f in patch.faces() {
        let [a, b, d, e] = f.corners();
        let pts = [a, b, e, d].map(|z| frame.e_point(&z));
        c.polygon(&pts, fill(f.pair(), &f.base));
    }
}

/// Tiles colored by their pair of directions.
pub fn patch(frame: &Frame, patch: &TilingPatch) -> String {
    let mut c = Canvas::new();
    tiles(&mut c, frame, patch, |k, _| TILE_COLORS[k]);
    c.finish()
}

/// The patch with the points of each flip class marked.
pub fn flips(frame: &Frame, patch: &TilingPatch, ss: &ShiftSet) -> String {
    let mut c = Canvas::new();
    tiles(&mut c, frame, patch, |_, _| "#f7f7f7");
    for (k, class) in ss.classes().iter().enumerate() {
        for z in class {
            c.circle(frame.e_point(z), 0.18, CLASS_COLORS[k]);
        }
    }
    c.finish()
}

/// Tiles shaded by band, with the step curves drawn on top.
pub fn staircase(frame: &Frame, st: &Staircase) -> String {
    let mut c = Canvas::new();
    let band = |_: usize, z: &[i64; 4]| BAND_COLORS[st.band(z).unwrap_or(0) % 2];
    tiles(&mut c, frame, st.patch(), band);
    let reach = octa_core::field::rational::to_f64(st.patch().radius());
    for curve in st.curves() {
        let mut pts: Vec<[f64; 2]> = curve
            .vertices()
            .iter()
            .map(|v| v.each_ref().map(octa_core::field::rational::to_f64))
            .collect();
        if let (Some(first), Some(last)) = (pts.first().copied(), pts.last().copied()) {
            pts.insert(0, [-2.0 * reach, first[1]]);
            pts.push([2.0 * reach, last[1]]);
        }
        for piece in clip_to_disc(&pts, reach) {
            let piece: Vec<[f64; 2]> = piece.into_iter().map(|p| curve.point_f(p)).collect();
            c.polyline(&piece, "#c0392b", 0.12);
        }
    }
    c.finish()
}

/// Pieces of a polyline inside the disc of radius `r` about the origin.
fn clip_to_disc(pts: &[[f64; 2]], r: f64) -> Vec<Vec<[f64; 2]>> {
    let inside = |p: [f64; 2]| p[0] * p[0] + p[1] * p[1] <= r * r;
    let mut out = Vec::new();
    let mut cur: Vec<[f64; 2]> = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = [b[0] - a[0], b[1] - a[1]];
        let qa = d[0] * d[0] + d[1] * d[1];
        let qb = 2.0 * (a[0] * d[0] + a[1] * d[1]);
        let qc = a[0] * a[0] + a[1] * a[1] - r * r;
        let disc = qb * qb - 4.0 * qa * qc;
        if qa == 0.0 || disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        let t0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
        let t1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
        if t0 > t1 {
            continue;
        }
        let at = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
        if cur.is_empty() || !inside(a) {
            if !cur.is_empty() {
                out.push(core::mem::take(&mut cur));
            }
            cur.push(at(t0));
        }
        cur.push(at(t1));
        if t1 < 1.0 {
            out.push(core::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out.retain(|p| p.len() >= 2);
    out
}

/// Legend text for the tile colors, used in command summaries.
pub fn tile_legend() -> String {
    PAIRS
        .iter()
        .zip(TILE_COLORS)
        .map(|((i, j), col)| format!("T{}{}={col}", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(" ")
}
