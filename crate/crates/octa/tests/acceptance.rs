//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero when any of them fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use octa_core::coincidence::{coincidence_equation, find_coincidences};
use octa_core::determination::{analyze, are_conjugate, common_quadratic_field, solve_pencil, Status};
use octa_core::field::rational::{rat, ratio};
use octa_core::field::{FieldDescriptor, FieldElement, Rational};
use octa_core::flips::{build_staircase, planar_atlas, shifted_points, staircase_atlas, verify_structure, Clause};
use octa_core::slope::{GrassmannCoords, Slope};
use octa_core::subperiod::{self, find_subperiods};
use octa_core::tiling::{generate_patch, r_atlas, tile_frequencies};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.toml"))
}

fn load(name: &str) -> Slope {
    octa::config::load(&config(name)).expect("bundled config").slope
}

fn offset_a() -> [Rational; 4] {
    [ratio(1, 7), ratio(2, 11), ratio(3, 13), ratio(5, 17)]
}

fn offset_b() -> [Rational; 4] {
    [ratio(-2, 9), ratio(1, 5), ratio(-3, 19), ratio(4, 23)]
}

fn q2(a: i64, b: i64) -> FieldElement {
    let d = FieldDescriptor::quadratic(2).unwrap();
    FieldElement::from_coeffs(d, vec![rat(a), rat(b)]).unwrap()
}

fn q(x: Rational) -> FieldElement {
    FieldElement::from_rational(FieldDescriptor::RATIONAL, x)
}

fn ammann_beenker_pipeline() -> Outcome {
    let s = load("ab");
    let g = s.grassmann();
    let expected = [q2(1, 0), q2(0, 1), q2(1, 0), q2(1, 0), q2(0, 1), q2(1, 0)];
    ensure!(g.coords() == &expected, "grassmann {:?}", g.coords());

    // G23 = G34, G14 = G34, G12 = G14, G12 = G23
    let want: [(usize, [i64; 3]); 4] = [(1, [1, 0, -1]), (2, [0, 1, -1]), (3, [1, -1, 0]), (4, [1, 0, -1])];
    let found = find_subperiods(&g).map_err(|e| e.to_string())?;
    ensure!(found.len() == 4, "{} subperiods", found.len());
    for (kind, c) in want {
        let hit = found.iter().any(|sp| {
            let got = sp.coeffs().clone().map(|x| i64::try_from(x).unwrap());
            sp.kind() == kind && (got == c || got == c.map(|x| -x))
        });
        ensure!(hit, "missing type {kind} relation {c:?}");
    }

    let a = analyze(&s).map_err(|e| e.to_string())?;
    ensure!(a.verdict.status == Status::OneParameterFamily, "verdict {:?}", a.verdict.status);
    let fam = a.verdict.family.as_ref().ok_or("no family witness")?;
    // (1, t, 1, 1, 2/t, 1) at t = √2 and t = 3
    let members = [
        GrassmannCoords::new([q2(1, 0), q2(0, 1), q2(1, 0), q2(1, 0), q2(0, 1), q2(1, 0)]),
        GrassmannCoords::new([rat(1), rat(3), rat(1), rat(1), ratio(2, 3), rat(1)].map(q)),
    ];
    for m in members {
        let m = m.map_err(|e| e.to_string())?;
        ensure!(m.plucker_residual().is_zero(), "Plücker fails on {m:?}");
        ensure!(a.system.is_satisfied_by(&m), "subperiods fail on {m:?}");
        ensure!(fam.contains(&m), "witness misses {m:?}");
    }
    Ok(format!("4 subperiods, rank {}", a.system.rank()))
}

fn biquadratic_has_two_types() -> Outcome {
    let s = load("biquadratic");
    let g = s.grassmann();
    ensure!(g.plucker_residual().is_zero(), "Plücker residual {}", g.plucker_residual());
    let found = find_subperiods(&g).map_err(|e| e.to_string())?;
    let kinds: BTreeSet<usize> = found.iter().map(|sp| sp.kind()).collect();
    ensure!(found.len() == 2, "{} subperiods", found.len());
    ensure!(kinds == BTreeSet::from([3, 4]), "types {kinds:?}");
    let a = analyze(&s).map_err(|e| e.to_string())?;
    ensure!(a.verdict.status == Status::FewerThanThreeTypes, "verdict {:?}", a.verdict.status);
    Ok("types {3, 4}".into())
}

fn random_element(rng: &mut impl Rng, d: FieldDescriptor) -> FieldElement {
    let c = (0..d.degree())
        .map(|_| ratio(rng.random_range(-4..=4), rng.random_range(1..=5)))
        .collect();
    FieldElement::from_coeffs(d, c).unwrap()
}

fn plucker_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let fields = [2, 3, 5, 6, 7, 10].map(|d| FieldDescriptor::quadratic(d).unwrap());
    let (mut checked, mut round_trips) = (0, 0);
    while checked < 1000 {
        let d = fields[rng.random_range(0..fields.len())];
        let u = [0; 4].map(|_| random_element(&mut rng, d));
        let v = [0; 4].map(|_| random_element(&mut rng, d));
        // minors computed here, independently of the library
        let m = |i: usize, j: usize| &u[i] * &v[j] - &u[j] * &v[i];
        let identity = m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
        ensure!(identity.is_zero(), "identity fails for {u:?} {v:?}");
        let Ok(s) = Slope::new(u.clone(), v.clone(), [rat(0), rat(0), rat(0), rat(0)]) else {
            continue;
        };
        let g = s.grassmann();
        ensure!(g.plucker_residual().is_zero(), "residual for {g:?}");
        let raw = GrassmannCoords::new([m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)]).unwrap();
        ensure!(raw.same_point(&g), "library minors differ for {u:?} {v:?}");
        if g.is_nondegenerate() {
            let back = g.plane_from_grassmann().map_err(|e| e.to_string())?;
            ensure!(back.grassmann() == g, "round trip changed {g:?}");
            round_trips += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} slopes, {round_trips} round trips"))
}

fn rank_and_rationality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let (mut found, mut tries) = (0, 0);
    while found < 200 {
        tries += 1;
        ensure!(tries < 100_000, "guided search stalled at {found}");
        let Some((_, s)) = support::three_type_slope(&mut rng, 2) else {
            continue;
        };
        let g = s.grassmann();
        if !g.is_nondegenerate() || !g.rational_subspace().is_empty() {
            continue;
        }
        let a = analyze(&s).map_err(|e| e.to_string())?;
        if a.types < 3 {
            continue;
        }
        ensure!(a.system.rank() >= 3, "rank {} for {g:?}", a.system.rank());
        found += 1;
    }
    let (mut points, mut tries) = (0, 0);
    while points < 100 {
        tries += 1;
        ensure!(tries < 100_000, "2+2 search stalled at {points}");
        // two planted subperiods of each of two types
        for g in support::two_plus_two_points(&mut rng, 2) {
            ensure!(g.rational_subspace().len() == 2, "not a rational plane: {g:?}");
            points += 1;
        }
    }
    Ok(format!("{found} three-type slopes, {points} two-by-two points"))
}

fn determined_search() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for tries in 1..=200_000 {
        let Some((_, s)) = support::four_subperiod_slope(&mut rng, 2) else {
            continue;
        };
        let a = analyze(&s).map_err(|e| e.to_string())?;
        if a.system.rank() != 4 {
            continue;
        }
        let kernel = a.system.kernel();
        let pencil = solve_pencil(&kernel[0], &kernel[1]).map_err(|e| e.to_string())?;
        let disc = &pencil.b * &pencil.b - rat(4) * &pencil.a * &pencil.c;
        if disc == rat(0) {
            continue;
        }
        ensure!(a.verdict.status == Status::Determined, "rank 4 but {:?}", a.verdict.status);
        let sols = &a.verdict.solutions;
        ensure!(sols.len() == 2, "{} solutions", sols.len());
        for g in sols {
            ensure!(g.plucker_residual().is_zero(), "Plücker fails on {g:?}");
            ensure!(a.system.is_satisfied_by(g), "subperiods fail on {g:?}");
        }
        ensure!(sols.iter().any(|g| g.same_point(&s.grassmann())), "slope not among the solutions");
        ensure!(are_conjugate(&sols[0], &sols[1]), "solutions are not conjugate");
        let field = common_quadratic_field(sols).ok_or("no common quadratic field")?;
        return Ok(format!("found after {tries} draws, field {field}"));
    }
    Err("no determined slope found".into())
}

fn ratio_error(radius: i64) -> Result<f64, String> {
    let s = load("ab");
    let p = generate_patch(&s, &rat(radius)).map_err(|e| e.to_string())?;
    let counts = tile_frequencies(&p);
    let squares = counts[&(0, 2)] + counts[&(1, 3)];
    let rhombi = counts.values().sum::<usize>() - squares;
    Ok((rhombi as f64 / squares as f64 / 2f64.sqrt() - 1.0).abs())
}

fn frequencies() -> Outcome {
    let e40 = ratio_error(40)?;
    let e80 = ratio_error(80)?;
    ensure!(e40 < 0.03, "radius 40 off by {:.2}%", 100.0 * e40);
    ensure!(e80 < e40, "error grew from {e40:.5} to {e80:.5}");
    Ok(format!("relative error {:.3}% at 40, {:.3}% at 80", 100.0 * e40, 100.0 * e80))
}

fn atlases_agree() -> Outcome {
    let s = load("ab");
    let p = generate_patch(&s.with_offset(offset_a()), &rat(20)).map_err(|e| e.to_string())?;
    let q = generate_patch(&s.with_offset(offset_b()), &rat(20)).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for r in 0..=2 {
        let a = r_atlas(&p, &rat(r)).map_err(|e| e.to_string())?;
        let b = r_atlas(&q, &rat(r)).map_err(|e| e.to_string())?;
        ensure!(a == b, "r = {r}: {} vs {} patterns", a.len(), b.len());
        sizes.push(a.len());
    }
    Ok(format!("atlas sizes {sizes:?}"))
}

fn coincidences() -> Outcome {
    let s = load("ab");
    let g = s.grassmann();
    let exact = find_coincidences(&s, 3).map_err(|e| e.to_string())?;
    ensure!(!exact.is_empty(), "no coincidence");
    for c in &exact {
        let eq = coincidence_equation(&s, c).map_err(|e| e.to_string())?;
        ensure!(eq.evaluate(&g).is_zero(), "equation {:?} does not vanish", eq.coeffs);
    }
    let cmp = support::brute::compare(&exact, &support::brute::coincidences(&s, 3));
    ensure!(cmp.agrees(), "{cmp:?}");
    Ok(format!("{} coincidences, {} near the tolerance", exact.len(), cmp.boundary))
}

fn flip_structure() -> Outcome {
    let radius = rat(100);
    let r = rat(3);

    let ab = load("ab");
    let sp = subperiod::analyze(&ab).map_err(|e| e.to_string())?;
    let sh = [ratio(1, 20), ratio(1, 33), ratio(1, 47), ratio(1, 61)];
    let ss = shifted_points(&ab, &sh, &radius).map_err(|e| e.to_string())?;
    let rep = verify_structure(&ss, &ab, &sp, &r).map_err(|e| e.to_string())?;
    ensure!(rep.covering, "classes do not cover the flip set");
    for c in &rep.clauses {
        ensure!(c.clause == Some(Clause::Lines), "type {} checked as {:?}", c.kind, c.clause);
        ensure!(c.points > 0 && c.lines > 0, "type {} has no lines", c.kind);
        ensure!(c.passed(), "type {} fails: {:?}", c.kind, c.witness);
    }

    let bq = load("biquadratic");
    let sp = subperiod::analyze(&bq).map_err(|e| e.to_string())?;
    let sh = [rat(0), rat(0), rat(0), ratio(1, 50)];
    let ss = shifted_points(&bq, &sh, &radius).map_err(|e| e.to_string())?;
    ensure!(ss.class(4).is_empty(), "E4 has {} points", ss.class(4).len());
    let rep = verify_structure(&ss, &bq, &sp, &r).map_err(|e| e.to_string())?;
    ensure!(rep.clauses[3].lines == 0, "{} type-4 lines", rep.clauses[3].lines);

    let generic = load("no-subperiod");
    ensure!(subperiod::analyze(&generic).map_err(|e| e.to_string())?.is_empty(), "has subperiods");
    let mut den = 10;
    loop {
        let sh = [ratio(1, den), ratio(2, 3 * den), ratio(1, 2 * den), ratio(2, 5 * den)];
        let ss = shifted_points(&generic, &sh, &radius).map_err(|e| e.to_string())?;
        let rep = verify_structure(&ss, &generic, &[], &r).map_err(|e| e.to_string())?;
        if rep.passed() {
            ensure!(rep.clauses.iter().all(|c| c.points == 0 || c.clause == Some(Clause::Sparse)), "{rep:?}");
            break;
        }
        den *= 2;
        ensure!(den <= 10_000, "clause 0 still fails at 1/{den}");
    }
    Ok(format!("sparse from shift 1/{den}"))
}

fn staircase() -> Outcome {
    let s = load("biquadratic");
    let sh = [rat(0), rat(0), rat(0), ratio(1, 200)];
    let (r, radius, k) = (rat(2), rat(30), 3);
    let st = build_staircase(&s, &sh, &r, k, &radius).map_err(|e| e.to_string())?;
    let atlas = staircase_atlas(&st, &r).map_err(|e| e.to_string())?;
    let planar = planar_atlas(&s, &sh, k, &r, &radius).map_err(|e| e.to_string())?;
    ensure!(atlas.is_subset(&planar), "{} patterns outside the planar atlas", atlas.difference(&planar).count());
    ensure!(!st.is_planar_for(&s).map_err(|e| e.to_string())?, "the lift fits the tube of E");
    ensure!(st.bands_follow_shifts().map_err(|e| e.to_string())?, "a band leaves its own tube");
    Ok(format!("{} of {} planar patterns used", atlas.len(), planar.len()))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { name: "ammann-beenker pipeline", limit: Some(Duration::from_secs(1)), run: ammann_beenker_pipeline },
        Criterion { name: "biquadratic slope", limit: Some(Duration::from_secs(1)), run: biquadratic_has_two_types },
        Criterion { name: "plucker suite", limit: None, run: plucker_suite },
        Criterion { name: "rank and rationality", limit: None, run: rank_and_rationality },
        Criterion { name: "determined search", limit: Some(Duration::from_secs(300)), run: determined_search },
        Criterion { name: "frequencies", limit: Some(Duration::from_secs(60)), run: frequencies },
        Criterion { name: "offset independent atlases", limit: None, run: atlases_agree },
        Criterion { name: "coincidences", limit: None, run: coincidences },
        Criterion { name: "flip structure", limit: Some(Duration::from_secs(120)), run: flip_structure },
        Criterion { name: "staircase", limit: None, run: staircase },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took longer than {limit:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} {:>2} {:<28} {:>8.3} s  {detail}", i + 1, c.name, took.as_secs_f64());
        failed += usize::from(result.is_err());
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
