//! Numerical experiments around the leading edge of the focusing NLS
//! dispersive shock wave.
//!
//! [`sim`] is a split-step Fourier solver used as an independent oracle;
//! [`checks`] runs the residual suites of the core library; [`commands`]
//! implements the `dsw-edge` subcommands on top of [`config`] and [`output`].

// NaN must fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sim;

pub use config::RunConfig;
pub use error::{CliError, Result};
