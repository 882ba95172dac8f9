mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perron_roots::Tolerance;

use commands::{CliError, RootsRequest};
use report::Style;

/// Real and eventually positive p-th roots of primitive matrices.
#[derive(Parser, Debug)]
#[command(name = "perron-roots", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Entrywise tolerance (absolute and relative).
    #[arg(long, env = "PERRON_ROOTS_TOL", global = true)]
    tol: Option<f64>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, Jordan structure and Perron-Frobenius verdicts.
    Analyze {
        matrix: PathBuf,
        /// Explicit `R`, `J_R` factorization; skips numerical Jordan recovery.
        #[arg(long)]
        factorization: Option<PathBuf>,
        /// Largest exponent tried for the power index.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Counts and lists p-th roots.
    Roots {
        matrix: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        factorization: Option<PathBuf>,
        /// Sample nonprimary roots from the commutant of `J_R`.
        #[arg(long)]
        nonprimary: bool,
        /// First sampling seed; further samples use consecutive seeds.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of nonprimary samples.
        #[arg(long, default_value_t = 3)]
        samples: u64,
        /// Report eventual stochasticity per root.
        #[arg(long)]
        stochastic: bool,
        /// Branch indices for the nonprimary family in block order, e.g. `0,0:0,1:1`.
        #[arg(long)]
        assignment: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Checks a candidate root `X` of `A`.
    Verify {
        x: PathBuf,
        a: PathBuf,
        #[arg(long)]
        p: usize,
        /// Largest accepted `||X^p - A||_inf`.
        #[arg(long, default_value_t = 1e-3)]
        max_residual: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest k with A^k, ..., A^(k+n) entrywise positive.
    PowerIndex {
        matrix: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

fn tolerance(common: &Common) -> Result<Tolerance, CliError> {
    let tol = Tolerance::default();
    match common.tol {
        Some(eps) => tol.with_eps(eps).map_err(|e| CliError::Input(e.to_string())),
        None => Ok(tol),
    }
}

fn check_p(p: usize) -> Result<(), CliError> {
    if p < 2 {
        return Err(CliError::Input(format!("--p must be at least 2, got {p}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let (name, common, outcome) = match &cli.command {
        Command::Analyze { matrix, factorization, cap, common } => {
            let tol = tolerance(common)?;
            ("analyze", common, commands::analyze(matrix, factorization.as_deref(), *cap, &tol)?)
        }
        Command::Roots {
            matrix,
            p,
            factorization,
            nonprimary,
            seed,
            samples,
            stochastic,
            assignment,
            common,
        } => {
            check_p(*p)?;
            let tol = tolerance(common)?;
            let req = RootsRequest {
                matrix: matrix.clone(),
                factorization: factorization.clone(),
                p: *p,
                nonprimary: *nonprimary,
                seed: *seed,
                samples: *samples,
                stochastic: *stochastic,
                assignment: assignment.clone(),
            };
            ("roots", common, commands::roots(&req, &tol)?)
        }
        Command::Verify { x, a, p, max_residual, cap, common } => {
            check_p(*p)?;
            let tol = tolerance(common)?;
            ("verify", common, commands::verify(x, a, *p, *max_residual, *cap, &tol)?)
        }
        Command::PowerIndex { matrix, cap, common } => {
            let tol = tolerance(common)?;
            ("power-index", common, commands::power_index_cmd(matrix, *cap, &tol)?)
        }
    };
    let style = match common.format {
        Format::Text => Style::Text,
        Format::Structured => Style::Structured,
    };
    Ok((report::render(name, outcome.body, style), outcome.verified))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, verified)) => {
            print!("{text}");
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
