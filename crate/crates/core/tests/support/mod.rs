//! Guided search for slopes with prescribed subperiods: stack integer
//! relations until the linear system has a two-dimensional kernel, then solve
//! the Plücker quadric on that pencil.

#![allow(dead_code)]

use num_bigint::BigInt;
use octa_core::determination::{solve_pencil, PencilRoots, SubperiodSystem};
use octa_core::slope::{GrassmannCoords, Slope};
use octa_core::subperiod::Subperiod;
use rand::Rng;

pub fn random_subperiod(rng: &mut impl Rng, kind: usize, max: i64) -> Subperiod {
    loop {
        let c = [0; 3].map(|_| rng.random_range(-max..=max));
        if let Ok(sp) = Subperiod::new(kind, c) {
            return sp;
        }
    }
}

pub fn random_form(rng: &mut impl Rng, max: i64) -> [BigInt; 6] {
    [0; 6].map(|_| BigInt::from(rng.random_range(-max..=max)))
}

/// Real Grassmann points cut out by the forms together with the Plücker
/// relation, when the forms leave a pencil.
pub fn pencil_points(forms: &[[BigInt; 6]]) -> Vec<GrassmannCoords> {
    let Ok(sys) = SubperiodSystem::new(forms.to_vec()) else {
        return Vec::new();
    };
    let kernel = sys.kernel();
    if kernel.len() != 2 {
        return Vec::new();
    }
    let Ok(p) = solve_pencil(&kernel[0], &kernel[1]) else {
        return Vec::new();
    };
    match &p.roots {
        PencilRoots::Real(roots) => roots.iter().map(|r| p.point(r)).collect(),
        PencilRoots::NoReal => Vec::new(),
    }
}

/// An irrational nondegenerate slope from the first usable pencil point.
pub fn slope_from_forms(forms: &[[BigInt; 6]]) -> Option<(GrassmannCoords, Slope)> {
    pencil_points(forms).into_iter().find_map(|g| {
        if !g.is_nondegenerate() || !g.rational_subspace().is_empty() {
            return None;
        }
        let s = g.plane_from_grassmann().ok()?;
        Some((g, s))
    })
}

/// Three subperiods of distinct random types plus one arbitrary relation.
pub fn three_type_slope(rng: &mut impl Rng, max: i64) -> Option<(Vec<Subperiod>, Slope)> {
    let mut kinds = vec![1, 2, 3, 4];
    kinds.remove(rng.random_range(0..4));
    let sps: Vec<Subperiod> = kinds
        .iter()
        .map(|&k| random_subperiod(rng, k, max))
        .collect();
    let mut forms: Vec<[BigInt; 6]> = sps.iter().map(Subperiod::linear_form).collect();
    forms.push(random_form(rng, max));
    let (_, s) = slope_from_forms(&forms)?;
    Some((sps, s))
}

/// Four subperiods covering at least three types.
pub fn four_subperiod_slope(rng: &mut impl Rng, max: i64) -> Option<(Vec<Subperiod>, Slope)> {
    let mut kinds = vec![1, 2, 3, 4];
    kinds.remove(rng.random_range(0..4));
    kinds.push(rng.random_range(1..=4));
    let sps: Vec<Subperiod> = kinds
        .iter()
        .map(|&k| random_subperiod(rng, k, max))
        .collect();
    let forms: Vec<[BigInt; 6]> = sps.iter().map(Subperiod::linear_form).collect();
    let (_, s) = slope_from_forms(&forms)?;
    Some((sps, s))
}

/// Real nondegenerate points with two subperiods of each of two types.
pub fn two_plus_two_points(rng: &mut impl Rng, max: i64) -> Vec<GrassmannCoords> {
    let i = rng.random_range(1..=4);
    let j = (i + rng.random_range(0..3)) % 4 + 1;
    let forms: Vec<[BigInt; 6]> = [i, i, j, j]
        .iter()
        .map(|&k| random_subperiod(rng, k, max).linear_form())
        .collect();
    pencil_points(&forms)
        .into_iter()
        .filter(GrassmannCoords::is_nondegenerate)
        .collect()
}

pub mod brute;
