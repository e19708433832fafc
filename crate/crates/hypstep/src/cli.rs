//! Command-line surface and the resolution of per-command defaults.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::grid::GridSpec;
use crate::CliError;

#[derive(Debug, Clone, Parser)]
#[command(name = "hypstep", version, about = "Kobayashi-geometry experiments on the ball and the bidisc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Conjugacy, semigroup, semi-model, Schwarz-Pick, invariance and metric-axiom suites
    Verify,
    /// Brute-force sigma(r) against its closed form
    Sigma,
    /// Hyperbolic step along orbits against the model prediction
    Step,
    /// Triangle slimness in the bidisc, in Omega and in the ball
    Slimness,
    /// Certification of the (2,0) quasi-geodesics
    Qgeo,
    /// Sector family: radial convergence, L monotonicity, defects
    Family,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sigma => "sigma",
            Command::Step => "step",
            Command::Slimness => "slimness",
            Command::Qgeo => "qgeo",
            Command::Family => "family",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Deliberate defects used to show that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Rotate the map by θ + 10⁻³ while the model keeps θ.
    SemimodelTheta,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Rotation angle θ in radians
    #[arg(long, global = true, default_value_t = PI, allow_negative_numbers = true)]
    pub theta: f64,
    /// Exponent β in (0, 1] of the sector map
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Radius grid start:stop:count
    #[arg(long, global = true)]
    pub r_grid: Option<GridSpec>,
    /// Time grid start:stop:count
    #[arg(long, global = true)]
    pub t_grid: Option<GridSpec>,
    /// Tolerance (meaning depends on the subcommand, see README)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample count (meaning depends on the subcommand, see README)
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record elapsed time in JSON metadata (makes output non-reproducible)
    #[arg(long, global = true)]
    pub wall_time: bool,
    #[arg(long = "self-test", global = true, hide = true, value_enum)]
    pub self_test: Option<Fault>,
}

/// Fully resolved inputs of one run; echoed into JSON metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub command: Command,
    pub theta: f64,
    pub beta: Option<f64>,
    pub r_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub self_test: Option<Fault>,
}

/// `1 − 10^{-k}`, `k = 1..=6`.
pub fn flagship_radii() -> Vec<f64> {
    (1..=6).map(|k| 1.0 - 10f64.powi(-k)).collect()
}

impl Settings {
    pub fn resolve(command: Command, o: &Options) -> Result<Self, CliError> {
        let (r_default, t_default, tol, samples) = match command {
            Command::Verify => (vec![], vec![], 1e-10, 10_000),
            Command::Sigma => (GridSpec::new(0.5, 0.9, 3).points(), vec![], 1e-2, 1000),
            Command::Step => (vec![], vec![], 1e-9, 4),
            Command::Slimness => (flagship_radii(), vec![], 1e-12, 200),
            Command::Qgeo => (vec![0.9], vec![], 1e-10, 50),
            Command::Family => (vec![], GridSpec::new(0.0, 10.0, 100).points(), 1e-10, 1000),
        };
        let mut r_grid = o.r_grid.map_or(r_default, |g| g.points());
        r_grid.sort_by(f64::total_cmp);
        let t_grid = o.t_grid.map_or(t_default, |g| g.points());
        let settings = Settings {
            command,
            theta: o.theta,
            beta: o.beta,
            r_grid,
            t_grid,
            tol: o.tol.unwrap_or(tol),
            samples: o.samples.unwrap_or(samples),
            seed: o.seed,
            self_test: o.self_test,
        };
        settings.validate()?;
        Ok(settings)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if !self.theta.is_finite() {
            return bad("--theta must be finite");
        }
        if let Some(b) = self.beta {
            if !(b > 0.0 && b <= 1.0) {
                return bad("--beta must lie in (0, 1]");
            }
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("--tol must be positive");
        }
        if self.samples == 0 {
            return bad("--samples must be positive");
        }
        if self.r_grid.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return bad("--r-grid values must lie in (0, 1)");
        }
        if self.t_grid.iter().any(|&t| t < 0.0) || self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad("--t-grid must be increasing and non-negative");
        }
        if self.self_test.is_some() && self.command != Command::Verify {
            return bad("--self-test applies to `verify` only");
        }
        Ok(())
    }
}
