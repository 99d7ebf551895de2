//! Command-line surface: subcommands and flags. Every flag that takes a
//! value is optional at the clap level so a `--config` file can supply it;
//! resolution (flags win) happens in `commands`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mmse-codes",
    version,
    about = "Rate/MMSE trade-off calculator for codes over the scalar Gaussian channel"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the maximum-rate superposition design for MMSE constraints
    Design(DesignArgs),
    /// Emit the (gamma, mmse, mi) table of a design over an SNR grid
    Curve(CurveArgs),
    /// Finite-length MMSE lower bound over an snr0 grid
    Bound(BoundArgs),
    /// Rate-disturbance region points and effective constraints
    Disturbance(DisturbanceArgs),
    /// Statistical verification of the crossing and integral identities
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    Nats,
    Bits,
}

impl std::str::FromStr for Units {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(format!("bad units {other:?} (nats or bits)")),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("bad format {other:?} (csv or json)")),
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// Rate units in emitted tables (default nats)
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    /// Interpret every input SNR (lists, grids, --snr1) as dB
    #[arg(long)]
    pub db: bool,
    /// Output format (default depends on the subcommand)
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for anything randomized (default 42)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo samples per estimate (default 100000)
    #[arg(long)]
    pub samples: Option<u64>,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key = value file mirroring these flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DesignArgs {
    /// SNR ladder, e.g. 2,2.5 (constraints at all but the last)
    #[arg(long)]
    pub snrs: Option<String>,
    /// Rate-splitting coefficients, one per constraint SNR
    #[arg(long)]
    pub betas: Option<String>,
    /// Rate coefficients instead of betas (converted per constraint)
    #[arg(long)]
    pub alphas: Option<String>,
    /// Single rate coefficient (two-point ladder shorthand)
    #[arg(long, conflicts_with = "alphas")]
    pub alpha: Option<f64>,
    /// Additionally require sum(betas) <= 1
    #[arg(long)]
    pub strict_sum: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// SNR ladder (with --betas), mutually exclusive with --design
    #[arg(long)]
    pub snrs: Option<String>,
    #[arg(long)]
    pub betas: Option<String>,
    /// Design document emitted by the design subcommand
    #[arg(long, conflicts_with_all = ["snrs", "betas"])]
    pub design: Option<PathBuf>,
    /// Evaluation grid: start:stop:step, start:stop:#count, or one value
    #[arg(long)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Design SNR of the finite-length code
    #[arg(long)]
    pub snr1: Option<f64>,
    /// Rate coefficient: rate = 0.5 ln(1 + alpha*snr1)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Code rate (in --units); alternative to --alpha
    #[arg(long, conflicts_with = "alpha")]
    pub rate: Option<f64>,
    /// Block error probability in [0, 1/2]
    #[arg(long)]
    pub pe: Option<f64>,
    /// snr0 grid, must lie inside (0, alpha*snr1)
    #[arg(long)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct DisturbanceArgs {
    /// SNR list: snr0,snr1 with --alpha, or a ladder with --alphas
    #[arg(long)]
    pub snrs: Option<String>,
    /// Single disturbance coefficient (region point mode)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Per-constraint coefficients (effective-alpha mode)
    #[arg(long, conflicts_with = "alpha")]
    pub alphas: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// single-crossing, immse, or all (default all)
    #[arg(long)]
    pub check: Option<String>,
    /// bpsk | random:m=..,n=.. | file:<path> | inline:<json>
    #[arg(long)]
    pub codebook: Option<String>,
    /// SNR grid for the checks (identity integrates to its last point)
    #[arg(long)]
    pub grid: Option<String>,
    /// Surrogate variance for the crossing check (default: prior variance)
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Standard-error multiplier for statistical verdicts (default 3)
    #[arg(long)]
    pub sigma_policy: Option<f64>,
    /// Evaluation budget for exact-posterior checks
    #[arg(long)]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}
