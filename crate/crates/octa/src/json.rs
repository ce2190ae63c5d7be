//! Exact JSON encodings. Rationals are `"p/q"` strings and field elements
//! carry their field, so no float ever reaches a JSON document.

use octa_core::coincidence::{Coincidence, CoincidenceEquation};
use octa_core::determination::{FamilyWitness, Verdict};
use octa_core::field::{rational, FieldElement, Rational};
use octa_core::flips::{ClauseReport, StepCurve, Witness};
use octa_core::poly::QuadraticForm;
use octa_core::slope::{GrassmannCoords, Slope, PAIR_LABELS};
use octa_core::subperiod::Subperiod;
use octa_core::tiling::{Face, Pattern, TilingPatch};
use serde_json::{json, Map, Value};

use crate::config::FORMAT;

pub fn rational(q: &Rational) -> Value {
    Value::String(rational::to_string(q))
}

pub fn element(x: &FieldElement) -> Value {
    json!({
        "field": x.descriptor().radicands(),
        "coeffs": x.coeff_strings(),
        "text": x.to_string(),
    })
}

pub fn elements(xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(element).collect())
}

fn ints<T: ToString>(xs: &[T]) -> Value {
    // big integers are written as strings, like rationals
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn slope(s: &Slope) -> Value {
    json!({
        "field": s.descriptor().radicands(),
        "u": elements(s.u()),
        "v": elements(s.v()),
        "offset": s.offset().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn grassmann(g: &GrassmannCoords) -> Value {
    let mut m = Map::new();
    for (label, x) in PAIR_LABELS.iter().zip(g.coords()) {
        m.insert(format!("G{label}"), element(x));
    }
    Value::Object(m)
}

pub fn subperiod(sp: &Subperiod) -> Value {
    json!({
        "kind": sp.kind(),
        "pairs": sp.pair_labels(),
        "coeffs": ints(sp.coeffs()),
        "lift": sp.lift().map(|l| elements(l)),
    })
}

pub fn quadratic_form(q: &QuadraticForm) -> Value {
    Value::Array(
        q.matrix()
            .iter()
            .map(|row| Value::Array(row.iter().map(rational).collect()))
            .collect(),
    )
}

fn family(w: &FamilyWitness) -> Value {
    json!({
        "kernel": w.kernel.iter().map(|k| ints(k)).collect::<Vec<_>>(),
        "restricted_plucker": quadratic_form(&w.conic),
    })
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "status": format!("{:?}", v.status),
        "rank": v.rank,
        "solutions": v.solutions.iter().map(grassmann).collect::<Vec<_>>(),
        "nonreal_solutions": v.nonreal_solutions,
        "family": v.family.as_ref().map(family),
    })
}

pub fn face(f: &Face) -> Value {
    json!({ "base": f.base, "i": f.i + 1, "j": f.j + 1 })
}

pub fn patch(p: &TilingPatch) -> Value {
    json!({
        "radius": rational(p.radius()),
        "vertices": p.vertices().iter().collect::<Vec<_>>(),
        "faces": p.faces().iter().map(face).collect::<Vec<_>>(),
    })
}

pub fn pattern(p: &Pattern) -> Value {
    Value::Array(p.faces().iter().map(face).collect())
}

pub fn coincidence(c: &Coincidence, eq: Option<&CoincidenceEquation>) -> Value {
    json!({
        "segments": c.segments.iter().map(|s| json!({"base": s.base, "dir": s.dir + 1})).collect::<Vec<_>>(),
        "directions": c.directions().iter().map(|d| d + 1).collect::<Vec<_>>(),
        "point": elements(&c.point),
        "equation": eq.map(|e| json!({
            "special": e.special,
            "roles": e.roles.map(|k| k + 1),
            "coeffs": ints(&e.coeffs),
        })),
    })
}

fn witness(w: &Witness) -> Value {
    let pair = |name: &str, a: &[i64; 4], b: &[i64; 4]| json!({"kind": name, "points": [a, b]});
    match w {
        Witness::ClosePair(a, b) => pair("ClosePair", a, b),
        Witness::WideLine(a, b) => pair("WideLine", a, b),
        Witness::CloseLines(a, b) => pair("CloseLines", a, b),
        Witness::OffPlane(a, b) => pair("OffPlane", a, b),
        Witness::OffLattice(a, b) => pair("OffLattice", a, b),
        Witness::TooManySubperiods => json!({"kind": "TooManySubperiods"}),
    }
}

pub fn clause(c: &ClauseReport) -> Value {
    json!({
        "kind": c.kind,
        "clause": c.clause.map(|x| format!("{x:?}")),
        "points": c.points,
        "lines": c.lines,
        "min_gap2": c.min_gap2.as_ref().map(element),
        "passed": c.passed(),
        "witness": c.witness.as_ref().map(witness),
    })
}

pub fn curve(c: &StepCurve) -> Value {
    json!({
        "axis": elements(c.axis()),
        "start": c.start(),
        "heights": c.heights().iter().map(rational).collect::<Vec<_>>(),
    })
}

/// Wraps a command's payload with the format version and the command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        m.extend(fields);
    }
    Value::Object(m)
}

/// Checks that a document holds no floating-point numbers.
pub fn is_exact(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(xs) => xs.iter().all(is_exact),
        Value::Object(m) => m.values().all(is_exact),
        _ => true,
    }
}
