//! `rho-ensembles`: sample random density matrices, evaluate exact moments,
//! tabulate level densities and run the verification suite.
//!
//! Exit codes: 0 on success, 1 when a verification or cross-method comparison
//! fails (or on I/O errors), 2 on invalid arguments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, ExactMethod};

#[derive(Parser, Debug)]
#[command(
    name = "rho-ensembles",
    version,
    about = "Random density matrices: sampling, exact moments, level densities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Hs,
    Induced,
    Bures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Rejection,
    Mcmc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExactQuantity {
    Trace,
    Entropy,
    TwoPointMoment,
    EntropyCorrelation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    AsymptoticHs,
    AsymptoticBures,
    FiniteN,
    TwoPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Exact,
    Sampling,
    Asymptotic,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw eigenvalue spectra and write them as CSV rows (sorted ascending).
    Sample {
        #[arg(long, value_enum)]
        ensemble: EnsembleArg,
        #[arg(long)]
        n: usize,
        /// Environment dimension (induced only; defaults to n).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bures spectrum sampler; defaults to rejection for n ≤ 3 and the chain above.
        #[arg(long, value_enum)]
        sampler: Option<SamplerArg>,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long)]
        thinning: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact rational (or a + b·π²) values; repeat --method to cross-check.
    Exact {
        #[arg(value_enum)]
        quantity: ExactQuantity,
        #[arg(long, value_enum, default_value = "induced")]
        ensemble: EnsembleArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long = "L")]
        l: Option<u32>,
        #[arg(long = "M")]
        m: Option<u32>,
        #[arg(long = "method", value_enum)]
        methods: Vec<ExactMethod>,
    },
    /// Tabulate a level density on a midpoint grid as CSV.
    Density {
        #[arg(value_enum)]
        kind: DensityKind,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Grid size per axis for the two-point density (defaults to --points).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Stop starting new checks after this many seconds.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = rho_ensembles::suite::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("RHO_ENSEMBLES_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("RHO_ENSEMBLES_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failure(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Sample {
            ensemble,
            n,
            k,
            count,
            seed,
            sampler,
            burn_in,
            thinning,
            format,
            out,
        } => commands::sample(commands::SampleArgs {
            ensemble,
            n,
            k,
            count,
            seed,
            sampler,
            burn_in,
            thinning,
            format,
            out,
        }),
        Command::Exact {
            quantity,
            ensemble,
            n,
            k,
            q,
            l,
            m,
            methods,
        } => commands::exact(commands::ExactArgs {
            quantity,
            ensemble,
            n,
            k,
            q,
            l,
            m,
            methods,
        }),
        Command::Density {
            kind,
            points,
            n,
            k,
            grid,
            out,
        } => commands::density(kind, points, n, k, grid, out),
        Command::Verify {
            suite,
            budget,
            seed,
            out,
        } => commands::verify(suite, budget, seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rho-ensembles: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
