use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyflow::angle::Angle;

use super::CliError;

/// Geometry, holonomy and geodesic dynamics of polygonal surfaces.
#[derive(Parser, Debug)]
#[command(name = "polyflow", version)]
pub struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Side-length threshold below which condition B is flagged.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Machine-readable output on stdout instead of a text summary.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quad,
    Mc,
}

#[derive(Args, Debug, Clone)]
pub struct ThetaArgs {
    /// Direction in units of π (`p/q`), or `rad:FLOAT`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Direction in radians (inexact).
    #[arg(long = "theta-rad", conflicts_with = "theta", allow_hyphen_values = true)]
    pub theta_rad: Option<f64>,
}

impl ThetaArgs {
    pub fn angle(&self) -> Result<Option<Angle>, CliError> {
        match (&self.theta, self.theta_rad) {
            (Some(t), _) => t.parse().map(Some).map_err(|e: polyflow::angle::ParseAngleError| CliError::Usage(e.to_string())),
            (None, Some(r)) if r.is_finite() => Ok(Some(Angle::radians_inexact(r))),
            (None, Some(r)) => Err(CliError::Usage(format!("non-finite angle {r}"))),
            (None, None) => Ok(None),
        }
    }

    pub fn required(&self) -> Result<Angle, CliError> {
        self.angle()?.ok_or_else(|| CliError::Usage("--theta or --theta-rad is required".into()))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a catalog surface and write its description.
    Make {
        #[arg(long)]
        family: String,
        /// Family parameter `key=value`; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a surface file and report its vertices and finiteness conditions.
    Validate { surface: PathBuf },
    /// Rotational holonomy; with `--arithmetic`, square-tiling detection.
    Classify {
        surface: PathBuf,
        #[arg(long)]
        arithmetic: bool,
        /// Denominator bound for rational detection.
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// Write the canonical translation cover.
    Unfold {
        surface: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Follow one orbit of the directional flow.
    Trace {
        surface: PathBuf,
        /// Start point `x,y` in chart coordinates.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Cell containing the start; located automatically when omitted.
        #[arg(long)]
        cell: Option<usize>,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 1000)]
        events: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Iterate the billiard map on the boundary.
    Billiard {
        surface: PathBuf,
        /// Boundary edge `cell:edge`.
        #[arg(long)]
        edge: String,
        /// Arclength along the edge from its start.
        #[arg(long)]
        arclength: f64,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Mean displacement over the section measure.
    Centering {
        surface: PathBuf,
        #[command(flatten)]
        theta: ThetaArgs,
        /// Use all directions instead of one invariant set.
        #[arg(long, conflicts_with_all = ["theta", "theta_rad"])]
        full: bool,
        #[arg(long, value_enum, default_value_t = Method::Quad)]
        method: Method,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// `auto`, `standard`, or `seam:G[,G...]`.
        #[arg(long, default_value = "auto")]
        section: String,
    },
    /// Sample orbits of the skew map and test for returns to displacement 0.
    Recurrence {
        surface: PathBuf,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, conflicts_with_all = ["theta", "theta_rad"])]
        full: bool,
        #[arg(long, default_value_t = 500)]
        orbits: usize,
        #[arg(long, default_value_t = 10_000)]
        returns: usize,
        #[arg(long, default_value = "auto")]
        section: String,
        /// Per-orbit CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Verdict and statistics as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Rationality and parity of `N` across a grid of angles `(m/n)π`.
    Amenability {
        #[arg(long)]
        family: String,
        #[arg(long = "param")]
        params: Vec<String>,
        /// Angle parameter to vary; defaults to the family's natural one.
        #[arg(long = "angle-param")]
        angle_param: Option<String>,
        #[arg(long = "max-den", default_value_t = 20)]
        max_den: i64,
    },
}
