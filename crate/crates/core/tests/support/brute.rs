//! Floating-point coincidence search used as an oracle for the exact one.

use octa_core::coincidence::Coincidence;
use octa_core::slope::Slope;

pub const TOL: f64 = 1e-9;

type P = [f64; 2];

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (0..4).map(|k| a[k] * b[k]).sum()
}

/// Orthonormal basis of the orthogonal complement of the slope.
fn perp_basis(s: &Slope) -> [[f64; 4]; 2] {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    let u = s.u().each_ref().map(|x| x.to_f64());
    let v = s.v().each_ref().map(|x| x.to_f64());
    let push = |mut w: [f64; 4], basis: &mut Vec<[f64; 4]>| {
        for b in basis.iter() {
            let t = dot(&w, b);
            for k in 0..4 {
                w[k] -= t * b[k];
            }
        }
        let n = dot(&w, &w).sqrt();
        if n > 1e-6 {
            basis.push(w.map(|x| x / n));
        }
    };
    push(u, &mut basis);
    push(v, &mut basis);
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        push(e, &mut basis);
    }
    [basis[2], basis[3]]
}

#[derive(Debug)]
pub struct Cluster {
    pub point: P,
    pub segments: Vec<([i64; 4], usize)>,
    /// Signed distance to the window boundary, positive inside.
    pub margin: f64,
}

impl Cluster {
    pub fn directions(&self) -> usize {
        let mut d: Vec<usize> = self.segments.iter().map(|s| s.1).collect();
        d.sort_unstable();
        d.dedup();
        d.len()
    }
}

/// Every point of the window (up to `TOL`) on open projected segments of at
/// least three directions.
pub fn coincidences(s: &Slope, radius: i64) -> Vec<Cluster> {
    let [p1, p2] = perp_basis(s);
    let proj = |x: [f64; 4]| [dot(&x, &p1), dot(&x, &p2)];
    let gens: [P; 4] = std::array::from_fn(|k| {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        proj(e)
    });
    let center = [0, 1].map(|i| gens.iter().map(|g| g[i]).sum::<f64>() / 2.0);
    let slabs: Vec<(P, f64)> = gens
        .iter()
        .map(|g| {
            let n = [-g[1], g[0]];
            let len = (n[0] * n[0] + n[1] * n[1]).sqrt();
            let n = [n[0] / len, n[1] / len];
            let half = gens.iter().map(|h| (n[0] * h[0] + n[1] * h[1]).abs()).sum::<f64>() / 2.0;
            (n, half)
        })
        .collect();
    let margin = |p: P| {
        slabs
            .iter()
            .map(|(n, h)| h - (n[0] * (p[0] - center[0]) + n[1] * (p[1] - center[1])).abs())
            .fold(f64::INFINITY, f64::min)
    };
    let reach = slabs.iter().map(|s| s.1).fold(0.0, f64::max) * 2.0;

    let mut segs: Vec<([i64; 4], usize, P)> = Vec::new();
    let side = 2 * radius + 1;
    for n in 0..side.pow(4) {
        let mut base = [0i64; 4];
        let mut m = n;
        for b in base.iter_mut() {
            *b = m % side - radius;
            m /= side;
        }
        let start = proj(base.map(|x| x as f64));
        let d = ((start[0] - center[0]).powi(2) + (start[1] - center[1]).powi(2)).sqrt();
        if d > reach + 2.0 {
            continue;
        }
        for k in 0..4 {
            segs.push((base, k, start));
        }
    }

    let mut hits: Vec<(P, [([i64; 4], usize); 2])> = Vec::new();
    for a in 0..segs.len() {
        for b in a + 1..segs.len() {
            let (ba, i, pa) = segs[a];
            let (bb, j, pb) = segs[b];
            if i == j {
                continue;
            }
            let (d, e) = (gens[i], gens[j]);
            let den = d[0] * e[1] - d[1] * e[0];
            let w = [pb[0] - pa[0], pb[1] - pa[1]];
            let t = (w[0] * e[1] - w[1] * e[0]) / den;
            let u = (w[0] * d[1] - w[1] * d[0]) / den;
            if t > TOL && t < 1.0 - TOL && u > TOL && u < 1.0 - TOL {
                let p = [pa[0] + t * d[0], pa[1] + t * d[1]];
                if margin(p) > -TOL {
                    hits.push((p, [(ba, i), (bb, j)]));
                }
            }
        }
    }

    let mut clusters: Vec<Cluster> = Vec::new();
    for (p, pair) in hits {
        let found = clusters
            .iter_mut()
            .find(|c| (c.point[0] - p[0]).abs() < TOL && (c.point[1] - p[1]).abs() < TOL);
        let c = match found {
            Some(c) => c,
            None => {
                clusters.push(Cluster { point: p, segments: Vec::new(), margin: margin(p) });
                clusters.last_mut().unwrap()
            }
        };
        for seg in pair {
            if !c.segments.contains(&seg) {
                c.segments.push(seg);
            }
        }
    }
    clusters.retain(|c| c.directions() >= 3);
    for c in &mut clusters {
        c.segments.sort();
    }
    clusters
}

#[derive(Debug, Default)]
pub struct Comparison {
    pub exact: usize,
    pub floating: usize,
    /// Floating clusters within `TOL` of the window boundary.
    pub boundary: usize,
    pub missed: usize,
    pub spurious: usize,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.missed == 0 && self.spurious == 0
    }
}

/// Matches exact coincidences against the floating ones by segment lists.
/// Clusters on the window boundary may fall either way.
pub fn compare(exact: &[Coincidence], floating: &[Cluster]) -> Comparison {
    let key = |c: &Coincidence| -> Vec<([i64; 4], usize)> {
        c.segments.iter().map(|s| (s.base, s.dir)).collect()
    };
    let exact_keys: Vec<_> = exact.iter().map(key).collect();
    let mut cmp = Comparison { exact: exact.len(), floating: floating.len(), ..Default::default() };
    for c in floating {
        let boundary = c.margin.abs() <= TOL;
        cmp.boundary += boundary as usize;
        if !boundary && !exact_keys.contains(&c.segments) {
            cmp.spurious += 1;
        }
    }
    for k in &exact_keys {
        if !floating.iter().any(|c| &c.segments == k) {
            cmp.missed += 1;
        }
    }
    cmp
}
