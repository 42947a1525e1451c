use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plate_grid::Scheme;

#[derive(Debug, Parser)]
#[command(name = "plate", version, about = "Clamped plate under tension: ball closed forms, grid solves and verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form quantities of one ball.
    Ball(BallArgs),
    /// Torsion function and rigidity of one ball, any real tension.
    Torsion(TorsionArgs),
    /// Two-ball energy sweep over a in (0, 1) as CSV, with an optional SVG plot.
    Twoball(TwoBallArgs),
    /// First plate eigenvalue on a rasterized domain.
    GridEig(GridArgs),
    /// Plate torsional rigidity on a rasterized domain.
    GridTorsion(GridArgs),
    /// Run a verification suite and report pass/fail as JSON.
    Verify(VerifyArgs),
    /// Convex-set criterion and tension threshold.
    Criteria(CriteriaArgs),
    /// Bessel values, zeros and the clamped constant γ_ν.
    Specfn(SpecfnArgs),
}

#[derive(Debug, Args)]
pub struct BallArgs {
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub tau: f64,
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub tau: f64,
    /// Number of (r, w) samples of the profile to include.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct TwoBallArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub d: Vec<u32>,
    /// Tensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1)]
    pub tau: Vec<f64>,
    /// Number of interior a-grid points a = k/(n+1).
    #[arg(long, default_value_t = 99)]
    pub points: usize,
    /// Also write an SVG plot of E against a.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Disk,
    Square,
    Rect,
    Triangle,
    LShape,
    Mask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SchemeArg {
    #[default]
    BoundaryFitted,
    ZeroExtension,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::BoundaryFitted => Scheme::BoundaryFitted,
            SchemeArg::ZeroExtension => Scheme::ZeroExtension,
        }
    }
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeKind,
    /// Disk radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Side of the square, triangle or L-shape.
    #[arg(long)]
    pub side: Option<f64>,
    /// Rectangle width:height; used with --unit-area or --height.
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    /// Scale to area 1 (ignores size parameters other than --aspect).
    #[arg(long)]
    pub unit_area: bool,
    /// Mask file for --shape mask.
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub h: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    #[arg(long, value_enum, default_value_t)]
    pub scheme: SchemeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Szego,
    Saintvenant,
    Talenti,
    Slopes,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Coarse spacing; comparison suites also solve at h/2.
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub h: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,1,10")]
    pub tau: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CriteriaArgs {
    /// Take perimeter and area from a named shape instead.
    #[arg(long, value_enum)]
    pub shape: Option<ShapeKind>,
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub perimeter: Option<f64>,
    #[arg(long)]
    pub area: Option<f64>,
    /// Γ(Ω, 0) for the tension threshold against the disk of the same area.
    #[arg(long)]
    pub omega_gamma0: Option<f64>,
    /// λ(Ω) for the tension threshold.
    #[arg(long)]
    pub omega_lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpecfnArgs {
    /// Bessel order ν; defaults to d/2 − 1.
    #[arg(long, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long)]
    pub x: Option<f64>,
    /// How many zeros of J_ν to list.
    #[arg(long, default_value_t = 3)]
    pub zeros: usize,
}
