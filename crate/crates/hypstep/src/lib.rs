//! Deterministic experiment runner for `hypstep-core`.
//!
//! Each subcommand of the `hypstep` binary maps to one function in
//! [`suites`] that returns a [`report::Report`]; rendering to CSV or JSON is
//! separate so that identical settings always give identical bytes.

pub mod cli;
mod error;
pub mod grid;
pub mod report;
pub mod sampling;
pub mod suites;

pub use error::CliError;
