use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use faberkit_core::scalar::parse_rational;
use faberkit_core::{ClassParams, MembershipError, PhiSpec, Rational, SamplingGrid};

use crate::error::{input, CliError};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "faberkit",
    version,
    about = "Faber coefficients, series reversion and coefficient bounds for bi-univalent function classes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inverse-function coefficients from the Faber formula and from reversion.
    Invert(InvertArgs),
    /// Faber coefficients K_n^p, checked against the power-series route.
    Faber(FaberArgs),
    /// Coefficients of the operator image, side by side with the published functionals.
    Expand(ExpandArgs),
    /// Coefficient bounds for a parameter triple.
    Bounds(BoundsArgs),
    /// Sampled membership test plus coefficient audit for one function.
    Verify(VerifyArgs),
    /// Parameter sweep over a grid and a corpus, driven by a config file.
    Sweep(SweepArgs),
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
    pub mu: Rational,
    #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
    pub lambda: Rational,
    #[arg(long, default_value = "0", value_parser = rational, allow_hyphen_values = true)]
    pub delta: Rational,
    #[arg(long, default_value = "0", value_parser = rational, allow_hyphen_values = true)]
    pub alpha: Rational,
}

impl ParamArgs {
    pub fn params(&self) -> Result<ClassParams, CliError> {
        ClassParams::new(self.mu.clone(), self.lambda.clone(), self.delta.clone(), self.alpha.clone()).map_err(input)
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Comma-separated sampling radii in (0, 1).
    #[arg(long, value_delimiter = ',')]
    pub radius_list: Option<Vec<f64>>,
    /// Sample points per circle.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Margin below which a verdict is inconclusive.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

impl GridArgs {
    pub fn grid(&self) -> Result<SamplingGrid, CliError> {
        let mut g = SamplingGrid::default();
        if let Some(r) = &self.radius_list {
            g.radii = r.clone();
        }
        if let Some(n) = self.samples {
            g.samples_per_circle = n;
        }
        if let Some(t) = self.tolerance {
            g.tolerance = t;
        }
        g.validate().map_err(input)?;
        Ok(g)
    }
}

/// Coefficients `a_2, a_3, ...` of a normalized function `z + a_2 z^2 + ...`.
#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Comma-separated rationals a2,a3,... (for `invert`, `a` draws random values).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Truncation order N (coefficients up to z^N).
    #[arg(long)]
    pub order: Option<usize>,
}

impl CoeffArgs {
    pub fn tail(&self) -> Result<Vec<Rational>, CliError> {
        parse_tail(&self.coeffs)
    }

    /// Truncation order: `--order` if given, else `default`, never below what
    /// the coefficient list needs.
    pub fn order_for(&self, tail: &[Rational], default: usize) -> Result<usize, CliError> {
        let needed = tail.len() + 1;
        match self.order {
            Some(n) if n < needed => Err(CliError::Input(format!(
                "--order {n} is too small for {} coefficients (needs at least {needed})",
                tail.len()
            ))),
            Some(n) => Ok(n),
            None => Ok(default.max(needed)),
        }
    }
}

pub fn parse_tail(s: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, x)| {
            parse_rational(x.trim()).map_err(|e| CliError::Input(format!("--coeffs entry {} ({x:?}): {e}", i + 2)))
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    /// Seed for the random draws of `--coeffs a`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FaberArgs {
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    /// Exponent p (nonzero rational).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub p: Rational,
    /// Indices n; defaults to 1..=N-1.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Exit with code 3 when warnings are produced.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Gap indices n >= 4 for the |a_n| bound.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub coeffs: CoeffArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    /// halfplane:ALPHA | disk:RHO | coeffs:C1,C2,...; omitted means the
    /// real-part test with alpha from --alpha.
    #[arg(long, value_parser = phi, allow_hyphen_values = true)]
    pub phi: Option<PhiSpec>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub strict: bool,
}

fn phi(s: &str) -> Result<PhiSpec, String> {
    s.parse::<PhiSpec>().map_err(|e: MembershipError| e.to_string())
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON file holding a sweep configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub strict: bool,
}
