//! Command line front end for `octa-core`: slope config files, exact JSON
//! reports and SVG figures.

pub mod cli;
pub mod config;
pub mod json;
pub mod svg;

use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NOT_DETERMINED: i32 = 10;

/// An error with the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_CONFIG, message: msg.into() }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_PRECONDITION, message: msg.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

impl From<octa_core::Error> for Failure {
    fn from(e: octa_core::Error) -> Self {
        match e {
            octa_core::Error::InvalidParameter(_) => Failure::config(e.to_string()),
            _ => Failure::precondition(e.to_string()),
        }
    }
}
