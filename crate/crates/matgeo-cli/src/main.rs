//! Command-line experiments on the matrix-geometry Laplacian.
//!
//! Every subcommand reads one JSON config, runs deterministically under
//! (config, seed), and writes its artifacts into the output directory.
//! Exit codes: 0 all asserted properties held, 1 mathematical/domain
//! failure, 2 broken invocation.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Experiment;
use output::CliError;

#[derive(Parser)]
#[command(
    name = "matgeo",
    about = "Laplacian, heat flow, Poisson solver and entropy diagnostics on matrix algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural identities of the geometry on random inputs.
    Props(RunArgs),
    /// Eigenvalues (and optionally eigenmatrices) of the Laplacian.
    Spectrum(RunArgs),
    /// Solve the Poisson equation for a trace-free source.
    Poisson(RunArgs),
    /// Integrate the heat equation (exact semigroup or RK4).
    Heat(RunArgs),
    /// Evolve two states and monitor contraction and entropy bounds.
    Stability(RunArgs),
    /// Integrate the log-Laplacian comparison flow.
    Ricci(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the seed from the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output directory from the config.
    #[arg(long)]
    output: Option<PathBuf>,
}

type CommandFn = fn(&Experiment, &std::path::Path) -> Result<(), CliError>;

fn run(command: Command) -> Result<(), CliError> {
    let (args, f): (&RunArgs, CommandFn) = match &command {
        Command::Props(a) => (a, commands::cmd_props),
        Command::Spectrum(a) => (a, commands::cmd_spectrum),
        Command::Poisson(a) => (a, commands::cmd_poisson),
        Command::Heat(a) => (a, commands::cmd_heat),
        Command::Stability(a) => (a, commands::cmd_stability),
        Command::Ricci(a) => (a, commands::cmd_ricci),
    };
    let exp = Experiment::load(&args.config, args.seed)?;
    let out_dir = args
        .output
        .clone()
        .or_else(|| exp.config.output_dir.clone())
        .ok_or_else(|| {
            CliError::Usage(
                "no output directory: set output_dir in the config or pass --output".into(),
            )
        })?;
    output::ensure_dir(&out_dir)?;
    f(&exp, &out_dir)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
