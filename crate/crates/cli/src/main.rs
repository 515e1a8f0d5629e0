//! `sdbounds`: spread of an observable over superposition states.
//! Statistics, bounds, the bundled reference sweep, ensemble fuzzing and
//! a two-slit demo.

mod commands;
mod error;
mod io;
mod manifest;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

const CSV_COLUMNS_HELP: &str = "\
CSV column orders (fixed; floats carry 12 significant digits):
  sweep files:      x,sign,norm_sq,exact,corrected_lower_raw,corrected_lower,\
corrected_upper,corrected_lower_satisfied,corrected_upper_satisfied,\
printed_lower_raw,printed_lower,printed_upper,printed_lower_satisfied,\
printed_upper_satisfied
  violations.csv:   index,variant,side,margin
  double_slit.csv:  quantity,value (rows: slit_one_mean, slit_one_sd, \
slit_two_mean, slit_two_sd, both_slits_mean, both_slits_sd, norm_sq, \
scaled_variance, corrected_lower, corrected_upper, \
corrected_lower_satisfied, corrected_upper_satisfied, printed_lower, \
printed_upper, printed_lower_satisfied, printed_upper_satisfied)

File schemas (JSON):
  operator: {\"dim\": d, \"re\": [[..]], \"im\": [[..]]}   (\"im\" optional)
  state:    {\"re\": [..], \"im\": [..]}                 (\"im\" optional)

Every command writes a <subcommand>_manifest.json beside its output with
the command line, resolved configuration, seed, tool version, timestamp
and the tolerance set in force.

Exit codes: 0 success; 1 validation/computation error (JSON on stderr);
2 usage error.";

#[derive(Parser)]
#[command(
    name = "sdbounds",
    version,
    about = "Spread of an observable over superposition states: statistics, bounds, sweeps, fuzzing",
    after_long_help = CSV_COLUMNS_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    Printed,
    Both,
}

impl VariantArg {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantArg::Corrected => "corrected",
            VariantArg::Printed => "printed",
            VariantArg::Both => "both",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

impl SignArg {
    pub fn as_str(self) -> &'static str {
        match self {
            SignArg::Plus => "plus",
            SignArg::Minus => "minus",
            SignArg::Both => "both",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    #[value(name = "real_positive")]
    RealPositive,
    #[value(name = "complex_haar")]
    ComplexHaar,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum OpsArg {
    Gue,
    #[value(name = "real_symmetric")]
    RealSymmetric,
    Diagonal,
}

#[derive(Subcommand)]
pub enum Command {
    /// Mean, second moment, variance and standard deviation of an
    /// observable on a state
    Sd {
        /// State file (JSON)
        #[arg(long)]
        state: PathBuf,
        /// Observable file (JSON)
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Accept states with any norm and renormalize them
        #[arg(long)]
        renormalize: bool,
        /// Directory for the run manifest
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Skew information of an observable on a density matrix
    Coherence {
        /// Density-matrix file (operator JSON schema; unit trace, PSD)
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Incompatibility of two observables on a state (sum of variances)
    Incompat {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "opA")]
        op_a: PathBuf,
        #[arg(long = "opB")]
        op_b: PathBuf,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Superposition bounds on the scaled variance of one observable
    Bounds {
        /// Comma-separated coefficients, e.g. "0.6,0.8" or "0.6+0.2i,0.8"
        #[arg(long)]
        alpha: String,
        /// Component state files, one per coefficient
        #[arg(long = "states", num_args = 1.., required = true)]
        states: Vec<PathBuf>,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Superposition bounds on the incompatibility of two observables
    IncompatBounds {
        #[arg(long)]
        alpha: String,
        #[arg(long = "states", num_args = 1.., required = true)]
        states: Vec<PathBuf>,
        #[arg(long = "opA")]
        op_a: PathBuf,
        #[arg(long = "opB")]
        op_b: PathBuf,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Sweep the bundled 4-dimensional reference instance over
    /// x·ψ₁ ± √(1−x²)·ψ₂, writing one CSV per sign
    SweepPaper {
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
        /// Number of x grid points on [0, 1], endpoints included
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fuzz bound validity and tightness over a seeded random ensemble
    Fuzz {
        #[arg(long)]
        dim: usize,
        /// Number of superposition components per draw
        #[arg(long)]
        components: usize,
        #[arg(long)]
        trials: u64,
        /// Master seed; SDBOUNDS_SEED applies when the flag is absent
        #[arg(long, env = "SDBOUNDS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "complex_haar")]
        coeffs: CoeffArg,
        #[arg(long, value_enum, default_value = "gue")]
        ops: OpsArg,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Two-slit demo: per-slit and both-slit spreads with their bounds
    DoubleSlit {
        /// SlitConfig JSON; defaults to the built-in geometry
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = commands::run(cli.command) {
        eprintln!("{}", e.to_json());
        std::process::exit(1);
    }
}
