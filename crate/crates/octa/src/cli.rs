//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use octa_core::coincidence::{coincidence_equation, find_coincidences};
use octa_core::determination::{self, Status};
use octa_core::field::{rational, Rational};
use octa_core::flips::{self, build_staircase, shifted_points, verify_structure};
use octa_core::slope::{Slope, PAIR_LABELS, PAIRS};
use octa_core::subperiod;
use octa_core::tiling::{
    generate_patch, generate_patch_with, generate_rect_patch, r_atlas, tile_frequencies, Frame, PatchOptions, TilingPatch,
};
use serde_json::{json, Value};

use crate::{config, json as js, svg, Failure, EXIT_NOT_DETERMINED, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "octa", version, about = "Exact analysis of planar octagonal tilings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Slope config (TOML).
    #[arg(long)]
    pub slope: PathBuf,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON; with a path, write the JSON there and keep the summary.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    pub json: Option<Option<PathBuf>>,
    /// Seed for the perturbed offset suggested on a boundary hit.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grassmann coordinates, subperiods and the determination verdict.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Generate a patch of the tiling.
    Tile {
        #[command(flatten)]
        common: Common,
        /// Rectangle `W,H` centered at the origin instead of the disk.
        #[arg(long, value_name = "W,H")]
        rect: Option<String>,
        #[arg(long, default_value = "10")]
        radius: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The r-atlas of a patch.
    Atlas {
        #[command(flatten)]
        common: Common,
        /// Rectangle `W,H` centered at the origin instead of the disk.
        #[arg(long, value_name = "W,H")]
        rect: Option<String>,
        #[arg(long, default_value = "12")]
        radius: String,
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Tile counts per pair of directions.
    Freq {
        #[command(flatten)]
        common: Common,
        /// Rectangle `W,H` centered at the origin instead of the disk.
        #[arg(long, value_name = "W,H")]
        rect: Option<String>,
        #[arg(long, default_value = "40")]
        radius: String,
    },
    /// Coincidences of lattice segments and their equations.
    Coincidences {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Flip set of a shift and its structure.
    Flips {
        #[command(flatten)]
        common: Common,
        /// Four rationals, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        #[arg(long, default_value = "40")]
        radius: String,
        /// Distance used by the structure checks.
        #[arg(long, default_value = "3")]
        r: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// A staircase of steps between shifted tilings.
    Staircase {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, default_value = "2")]
        r: String,
        #[arg(long, default_value = "30")]
        radius: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze { common }
            | Command::Tile { common, .. }
            | Command::Atlas { common, .. }
            | Command::Freq { common, .. }
            | Command::Coincidences { common, .. }
            | Command::Flips { common, .. }
            | Command::Staircase { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Tile { .. } => "tile",
            Command::Atlas { .. } => "atlas",
            Command::Freq { .. } => "freq",
            Command::Coincidences { .. } => "coincidences",
            Command::Flips { .. } => "flips",
            Command::Staircase { .. } => "staircase",
        }
    }
}

/// What a command produced.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub svg: Option<String>,
    pub code: i32,
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    rational::parse(s).ok_or_else(|| Failure::config(format!("--{flag}: not a rational number: {s:?}")))
}

fn parse_nonnegative(flag: &str, s: &str) -> Result<Rational, Failure> {
    let q = parse_rational(flag, s)?;
    if q < rational::rat(0) {
        return Err(Failure::config(format!("--{flag} must be nonnegative")));
    }
    Ok(q)
}

pub fn parse_shift(s: &str) -> Result<[Rational; 4], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::config(format!("--shift needs four comma separated rationals, got {s:?}")));
    }
    let v = parts
        .iter()
        .map(|p| parse_rational("shift", p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(v.try_into().expect("four entries"))
}

fn q(x: &Rational) -> String {
    let s = rational::to_string(x);
    s.strip_suffix("/1").map(str::to_owned).unwrap_or(s)
}

/// Where a patch is cut: the disk of a radius or a centered rectangle.
#[derive(Clone, Debug)]
pub enum Region {
    Disk(Rational),
    Rect(Rational, Rational),
}

impl Region {
    fn parse(radius: &str, rect: Option<&str>) -> Result<Region, Failure> {
        match rect {
            None => Ok(Region::Disk(parse_nonnegative("radius", radius)?)),
            Some(r) => match r.split(',').collect::<Vec<_>>()[..] {
                [w, h] => Ok(Region::Rect(parse_nonnegative("rect", w)?, parse_nonnegative("rect", h)?)),
                _ => Err(Failure::config(format!("--rect needs W,H, got {r:?}"))),
            },
        }
    }

    fn describe(&self) -> String {
        match self {
            Region::Disk(r) => format!("radius {}", q(r)),
            Region::Rect(w, h) => format!("rectangle {}×{}", q(w), q(h)),
        }
    }

    fn json(&self) -> Value {
        match self {
            Region::Disk(r) => json!({ "radius": js::rational(r) }),
            Region::Rect(w, h) => json!({ "width": js::rational(w), "height": js::rational(h) }),
        }
    }
}

fn strict_patch(s: &Slope, region: &Region, seed: u64) -> Result<TilingPatch, Failure> {
    let opts = PatchOptions { strict_boundary: true, seed };
    Ok(match region {
        Region::Disk(r) => generate_patch_with(s, r, opts)?,
        Region::Rect(w, h) => generate_rect_patch(s, w, h, opts)?,
    })
}

fn relation(sp: &subperiod::Subperiod) -> String {
    let mut out = String::new();
    for (c, label) in sp.coeffs().iter().zip(sp.pair_labels()) {
        let text = c.to_string();
        if text == "0" {
            continue;
        }
        let neg = text.starts_with('-');
        let mag = text.trim_start_matches('-');
        let coef = if mag == "1" { "" } else { mag };
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        let _ = write!(out, "{coef}G{label}");
    }
    out
}

pub fn analyze(s: &Slope) -> Result<Report, Failure> {
    let g = s.grassmann();
    g.require_nondegenerate()?;
    let a = determination::analyze(s)?;
    let rational_lines = g.rational_subspace();
    let mut text = String::new();
    let _ = writeln!(text, "field      {}", s.descriptor());
    for (label, x) in PAIR_LABELS.iter().zip(g.coords()) {
        let _ = writeln!(text, "G{label}        {x}");
    }
    let _ = writeln!(text, "irrational {}", rational_lines.is_empty());
    for sp in &a.subperiods {
        let _ = writeln!(text, "subperiod  type {}: {} = 0", sp.kind(), relation(sp));
    }
    let _ = writeln!(text, "types      {}", a.types);
    let _ = writeln!(text, "rank       {}", a.system.rank());
    let _ = writeln!(text, "verdict    {:?}", a.verdict.status);
    for sol in &a.verdict.solutions {
        let parts: Vec<String> = sol.coords().iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "solution   ({})", parts.join(", "));
    }
    let body = json!({
        "slope": js::slope(s),
        "grassmann": js::grassmann(&g),
        "normalized": js::grassmann(&g.clone().normalized()),
        "plucker_holds": g.plucker_residual().is_zero(),
        "nondegenerate": g.is_nondegenerate(),
        "rational_subspace": rational_lines.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "subperiods": a.subperiods.iter().map(js::subperiod).collect::<Vec<_>>(),
        "types": a.types,
        "verdict": js::verdict(&a.verdict),
    });
    let code = if a.verdict.status == Status::Determined { EXIT_OK } else { EXIT_NOT_DETERMINED };
    Ok(Report { text, json: body, svg: None, code })
}

fn counts_text(p: &TilingPatch) -> String {
    let counts = tile_frequencies(p);
    PAIRS
        .iter()
        .map(|ij| format!("T{}{}={}", ij.0 + 1, ij.1 + 1, counts[ij]))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn tile(s: &Slope, region: &Region, seed: u64, want_svg: bool) -> Result<Report, Failure> {
    let p = strict_patch(s, region, seed)?;
    let frame = Frame::new(s)?;
    let text = format!(
        "{}: {} vertices, {} tiles\n{}\ncolors {}\n",
        region.describe(),
        p.vertices().len(),
        p.faces().len(),
        counts_text(&p),
        svg::tile_legend()
    );
    let svg = want_svg.then(|| svg::patch(&frame, &p));
    Ok(Report { text, json: json!({ "region": region.json(), "patch": js::patch(&p) }), svg, code: EXIT_OK })
}

pub fn atlas(s: &Slope, region: &Region, r: &Rational, seed: u64) -> Result<Report, Failure> {
    let p = strict_patch(s, region, seed)?;
    let atlas = r_atlas(&p, r)?;
    let sizes: Vec<usize> = atlas.iter().map(|x| x.len()).collect();
    let text = format!(
        "{} patterns of diameter {} ({}), sizes {}..{}\n",
        atlas.len(),
        q(r),
        region.describe(),
        sizes.iter().min().unwrap_or(&0),
        sizes.iter().max().unwrap_or(&0)
    );
    let body = json!({
        "region": region.json(),
        "r": js::rational(r),
        "count": atlas.len(),
        "patterns": atlas.iter().map(js::pattern).collect::<Vec<_>>(),
    });
    Ok(Report { text, json: body, svg: None, code: EXIT_OK })
}

pub fn freq(s: &Slope, region: &Region, seed: u64) -> Result<Report, Failure> {
    let p = strict_patch(s, region, seed)?;
    let counts = tile_frequencies(&p);
    let total: usize = counts.values().sum();
    let g = s.grassmann();
    let mut text = format!("{}: {total} tiles\n", region.describe());
    let mut rows = Vec::new();
    for (k, ij) in PAIRS.iter().enumerate() {
        let n = counts[ij];
        let share = Rational::new((n as i64).into(), (total.max(1) as i64).into());
        let _ = writeln!(text, "T{}{}  {n:>7}  |G| = {}", ij.0 + 1, ij.1 + 1, g.coords()[k].abs());
        rows.push(json!({
            "pair": format!("{}{}", ij.0 + 1, ij.1 + 1),
            "count": n,
            "share": js::rational(&share),
            "abs_grassmann": js::element(&g.coords()[k].abs()),
        }));
    }
    let body = json!({ "region": region.json(), "total": total, "tiles": rows });
    Ok(Report { text, json: body, svg: None, code: EXIT_OK })
}

pub fn coincidences(s: &Slope, radius: u32) -> Result<Report, Failure> {
    let g = s.grassmann();
    let cs = find_coincidences(s, radius)?;
    let mut text = format!("{} coincidences with segments in [-{radius}, {radius}]⁴\n", cs.len());
    let mut items = Vec::new();
    for c in &cs {
        let eq = coincidence_equation(s, c)?;
        debug_assert!(eq.evaluate(&g).is_zero());
        let coeffs: Vec<String> = eq.coeffs.iter().map(ToString::to_string).collect();
        let dirs: Vec<String> = c.directions().iter().map(|d| (d + 1).to_string()).collect();
        let _ = writeln!(
            text,
            "directions {} ({} segments), special {}, coefficients [{}]",
            dirs.join(""),
            c.segments.len(),
            eq.special,
            coeffs.join(", ")
        );
        items.push(js::coincidence(c, Some(&eq)));
    }
    let body = json!({ "radius": radius, "coincidences": items });
    Ok(Report { text, json: body, svg: None, code: EXIT_OK })
}

pub fn flip_set(s: &Slope, shift: &[Rational; 4], radius: &Rational, r: &Rational, want_svg: bool) -> Result<Report, Failure> {
    let ss = shifted_points(s, shift, radius)?;
    let sp = subperiod::analyze(s)?;
    let rep = verify_structure(&ss, s, &sp, r)?;
    let mut text = format!(
        "{} entering, {} leaving, covering {}\n",
        ss.points().len(),
        ss.exiting().len(),
        rep.covering
    );
    for c in &rep.clauses {
        let _ = writeln!(
            text,
            "E{}  {:>6} points  {:<8} lines {:<4} {}",
            c.kind,
            c.points,
            c.clause.map(|x| format!("{x:?}")).unwrap_or_else(|| "-".into()),
            c.lines,
            if c.passed() { "pass".to_owned() } else { format!("FAIL {:?}", c.witness) }
        );
    }
    let body = json!({
        "shift": shift.iter().map(js::rational).collect::<Vec<_>>(),
        "radius": js::rational(radius),
        "r": js::rational(r),
        "entering": ss.points(),
        "leaving": ss.exiting(),
        "classes": ss.classes(),
        "covering": rep.covering,
        "clauses": rep.clauses.iter().map(js::clause).collect::<Vec<_>>(),
        "passed": rep.passed(),
    });
    let svg = if want_svg {
        let frame = Frame::new(s)?;
        let patch = generate_patch(s, radius)?;
        Some(svg::flips(&frame, &patch, &ss))
    } else {
        None
    };
    Ok(Report { text, json: body, svg, code: EXIT_OK })
}

pub fn staircase(
    s: &Slope,
    shift: &[Rational; 4],
    steps: usize,
    r: &Rational,
    radius: &Rational,
    want_svg: bool,
) -> Result<Report, Failure> {
    let st = build_staircase(s, shift, r, steps, radius)?;
    let frame = Frame::new(s)?;
    let atlas = flips::staircase_atlas(&st, r)?;
    let planar = flips::planar_atlas(s, shift, steps, r, radius)?;
    let included = atlas.is_subset(&planar);
    let planar_for_e = st.is_planar_for(s)?;
    let follows = st.bands_follow_shifts()?;
    let mut text = format!(
        "{} steps, {} vertices, {} tiles\nplanar for E: {planar_for_e}\nbands follow their shifts: {follows}\natlas {} ⊆ planar atlas {}: {included}\n",
        st.steps(),
        st.patch().vertices().len(),
        st.patch().faces().len(),
        atlas.len(),
        planar.len()
    );
    let devs: Vec<String> = st.deviations().iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "deviations {}", devs.join(" | "));
    let mut band_sizes = vec![0usize; st.steps() + 1];
    for &b in st.bands().values() {
        band_sizes[b] += 1;
    }
    let body = json!({
        "shift": shift.iter().map(js::rational).collect::<Vec<_>>(),
        "steps": st.steps(),
        "r": js::rational(r),
        "clearance": js::rational(st.clearance()),
        "patch": js::patch(st.patch()),
        "curves": st.curves().iter().map(js::curve).collect::<Vec<_>>(),
        "band_sizes": band_sizes,
        "flips": (0..st.steps()).map(|j| st.flips(j).len()).collect::<Vec<_>>(),
        "deviations": js::elements(st.deviations()),
        "planar_for_e": planar_for_e,
        "bands_follow_shifts": follows,
        "atlas_size": atlas.len(),
        "planar_atlas_size": planar.len(),
        "atlas_included": included,
    });
    let svg = want_svg.then(|| svg::staircase(&frame, &st));
    Ok(Report { text, json: body, svg, code: EXIT_OK })
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    let common = cmd.common();
    let cfg = config::load(&common.slope)?;
    let s = &cfg.slope;
    let seed = common.seed;
    match cmd {
        Command::Analyze { .. } => analyze(s),
        Command::Tile { radius, rect, svg, .. } => tile(s, &Region::parse(radius, rect.as_deref())?, seed, svg.is_some()),
        Command::Atlas { radius, rect, r, .. } => {
            atlas(s, &Region::parse(radius, rect.as_deref())?, &parse_nonnegative("r", r)?, seed)
        }
        Command::Freq { radius, rect, .. } => freq(s, &Region::parse(radius, rect.as_deref())?, seed),
        Command::Coincidences { radius, .. } => coincidences(s, *radius),
        Command::Flips { shift, radius, r, svg, .. } => flip_set(
            s,
            &parse_shift(shift)?,
            &parse_nonnegative("radius", radius)?,
            &parse_nonnegative("r", r)?,
            svg.is_some(),
        ),
        Command::Staircase { shift, steps, r, radius, svg, .. } => staircase(
            s,
            &parse_shift(shift)?,
            *steps,
            &parse_nonnegative("r", r)?,
            &parse_nonnegative("radius", radius)?,
            svg.is_some(),
        ),
    }
}

fn svg_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Tile { svg, .. } | Command::Flips { svg, .. } | Command::Staircase { svg, .. } => svg.as_deref(),
        _ => None,
    }
}

fn write_file(path: &Path, data: &str) -> Result<(), Failure> {
    std::fs::write(path, data).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
}

fn emit(cmd: &Command, report: &Report) -> Result<(), Failure> {
    let common = cmd.common();
    let doc = js::document(cmd.name(), report.json.clone());
    debug_assert!(js::is_exact(&doc));
    let json_text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    let main = match &common.json {
        Some(Some(path)) => {
            write_file(path, &json_text)?;
            &report.text
        }
        Some(None) => &json_text,
        None => &report.text,
    };
    match &common.out {
        Some(path) => write_file(path, main)?,
        None => print!("{main}"),
    }
    if let (Some(path), Some(svg)) = (svg_path(cmd), &report.svg) {
        write_file(path, svg)?;
    }
    Ok(())
}

/// Runs the command line and returns the exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli.command).and_then(|r| emit(&cli.command, &r).map(|_| r.code));
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}
