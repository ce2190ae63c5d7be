//! Exact analysis of two-dimensional slopes in R⁴ and the planar octagonal
//! tilings they define.
//!
//! Everything here works over multi-quadratic number fields with exact
//! rational coefficients, so every geometric predicate (window membership,
//! segment intersection, distance comparisons) is decided without rounding.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON, SVG and
//! the command line live in the companion `octa` crate.
//!
//! Module map:
//!
//! * [`field`]: rationals, multi-quadratic field elements, exact sign,
//!   conjugation and rational kernels.
//! * [`slope`]: planes, Grassmann coordinates, nondegeneracy, irrationality.
//! * [`subperiod`]: subperiod detection and lifting.
//! * [`determination`]: whether a slope is determined by its subperiods.
//! * [`coincidence`]: coincidences and their quadratic equations.
//! * [`tiling`]: windows, cut-and-project patches, frequencies and atlases.
//! * [`flips`]: flip sets of shifted slopes, steps and staircases.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coincidence;
pub mod determination;
mod error;
pub mod field;
pub mod flips;
pub mod poly;
pub mod slope;
pub mod subperiod;
pub mod tiling;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
