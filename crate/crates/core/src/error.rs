use alloc::string::String;

use crate::field::FieldDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(&'static str),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("degenerate slope: G{0} vanishes")]
    Degenerate(&'static str),
    #[error("Plücker relation violated")]
    PluckerViolated,
    #[error("slope contains a rational line")]
    RationalSlope,
    #[error("relation is not a subperiod of this slope")]
    NotASubperiod,
    #[error("subperiods are linearly dependent")]
    DependentSubperiods,
    #[error("subperiods must have three distinct types")]
    SubperiodTypes,
    #[error("binary form vanishes identically")]
    ZeroForm,
    #[error("coincidence does not match the required index pattern: {0}")]
    IndexPattern(&'static str),
    #[error(
        "lattice point {point:?} projects onto the window boundary; try offset [{suggestion}]"
    )]
    BoundaryHit { point: [i64; 4], suggestion: String },
    #[error("patch radius {radius} too small for r = {r}")]
    PatchTooSmall { radius: String, r: String },
    #[error("shift too large: points {first:?} and {second:?} break the flip dichotomy for direction {direction}")]
    ShiftTooLarge {
        direction: usize,
        first: [i64; 4],
        second: [i64; 4],
    },
    #[error("no admissible step corridor: {0}")]
    NoCorridor(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
