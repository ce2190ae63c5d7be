//! Slope configuration files.
//!
//! ```toml
//! format = 1
//! radicands = [2]
//! # coordinates are rationals or coefficient lists over 1, √2
//! # (short lists are padded with zeros)
//! u = [[0, 1], 1, 0, -1]
//! v = [0, 1, [0, 1], 1]
//! offset = ["1/7", "2/11", "3/13", "5/17"]
//! ```
//!
//! Instead of `u` and `v` a config may give the six Grassmann coordinates
//! under `grassmann`; the plane is then rebuilt from them.

use std::path::Path;

use octa_core::field::{rational, FieldDescriptor, FieldElement, Rational, Vec4};
use octa_core::slope::{GrassmannCoords, Slope};
use serde::Deserialize;

use crate::Failure;

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Coord {
    Scalar(Number),
    Coeffs(Vec<Number>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    format: u32,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    radicands: Vec<i64>,
    u: Option<Vec<Coord>>,
    v: Option<Vec<Coord>>,
    grassmann: Option<Vec<Coord>>,
    offset: Option<Vec<Number>>,
}

/// A parsed slope config.
#[derive(Clone, Debug)]
pub struct SlopeConfig {
    pub name: Option<String>,
    pub slope: Slope,
}

fn bad(msg: impl Into<String>) -> Failure {
    Failure::config(msg)
}

fn number(n: &Number) -> Result<Rational, Failure> {
    match n {
        Number::Int(k) => Ok(rational::rat(*k)),
        Number::Text(s) => rational::parse(s).ok_or_else(|| bad(format!("not a rational number: {s:?}"))),
    }
}

fn element(desc: FieldDescriptor, c: &Coord) -> Result<FieldElement, Failure> {
    match c {
        Coord::Scalar(n) => Ok(FieldElement::from_rational(desc, number(n)?)),
        Coord::Coeffs(cs) => {
            let mut coeffs = cs.iter().map(number).collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() < desc.degree() {
                coeffs.resize(desc.degree(), rational::rat(0));
            }
            FieldElement::from_coeffs(desc, coeffs).map_err(|e| bad(e.to_string()))
        }
    }
}

fn elements<const N: usize>(desc: FieldDescriptor, key: &str, cs: &[Coord]) -> Result<[FieldElement; N], Failure> {
    if cs.len() != N {
        return Err(bad(format!("`{key}` needs {N} entries, found {}", cs.len())));
    }
    let v = cs.iter().map(|c| element(desc, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(v.try_into().expect("length checked"))
}

/// Parses a config from TOML text.
pub fn parse(text: &str) -> Result<SlopeConfig, Failure> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
    if raw.format != FORMAT {
        return Err(bad(format!("unsupported format {} (expected {FORMAT})", raw.format)));
    }
    let desc = FieldDescriptor::new(&raw.radicands).map_err(|e| bad(e.to_string()))?;
    let offset: [Rational; 4] = match &raw.offset {
        None => std::array::from_fn(|_| rational::rat(0)),
        Some(o) if o.len() == 4 => {
            let v = o.iter().map(number).collect::<Result<Vec<_>, _>>()?;
            v.try_into().expect("length checked")
        }
        Some(o) => return Err(bad(format!("`offset` needs 4 entries, found {}", o.len()))),
    };
    let slope = match (&raw.u, &raw.v, &raw.grassmann) {
        (Some(u), Some(v), None) => {
            let u: Vec4 = elements(desc, "u", u)?;
            let v: Vec4 = elements(desc, "v", v)?;
            Slope::new(u, v, offset).map_err(|e| bad(e.to_string()))?
        }
        (None, None, Some(g)) => {
            let g: [FieldElement; 6] = elements(desc, "grassmann", g)?;
            let g = GrassmannCoords::new(g).map_err(|e| bad(e.to_string()))?;
            g.plane_from_grassmann()
                .map_err(|e| Failure::precondition(e.to_string()))?
                .with_offset(offset)
        }
        _ => return Err(bad("give either `u` and `v`, or `grassmann`")),
    };
    Ok(SlopeConfig { name: raw.name, slope })
}

pub fn load(path: &Path) -> Result<SlopeConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    parse(&text)
}
