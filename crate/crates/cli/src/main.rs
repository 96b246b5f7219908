//! `fiqs` — experiments on the fixed-interaction simulator.
//!
//! Exit codes: 0 success, 1 runtime or numeric failure, 2 usage or
//! configuration error.

mod config;
mod experiments;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CliError, RunConfig};

#[derive(Parser)]
#[command(name = "fiqs", version, about = "Fixed-interaction quantum simulator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform-plan fidelity sweep against the ideal transform.
    QftFidelity(RunConfig),
    /// Decoupling run: measured average phases vs the half/quarter rules.
    DecoupleDemo(RunConfig),
    /// Quadratic phase gate: target vs achieved coefficients.
    PhaseGate(RunConfig),
    /// Wave-packet evolution with observables and wavefunction dumps.
    Schrodinger(RunConfig),
    /// Step-size convergence study against the analytic solution.
    TrotterStudy(RunConfig),
}

fn run(command: Command) -> Result<(), CliError> {
    let (mut cfg, runner): (RunConfig, fn(&RunConfig) -> Result<(), CliError>) = match command {
        Command::QftFidelity(cfg) => (cfg, experiments::qft_fidelity),
        Command::DecoupleDemo(cfg) => (cfg, experiments::decouple_demo),
        Command::PhaseGate(cfg) => (cfg, experiments::phase_gate),
        Command::Schrodinger(cfg) => (cfg, experiments::schrodinger),
        Command::TrotterStudy(cfg) => (cfg, experiments::trotter_study),
    };
    cfg.merge_file()?;
    runner(&cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
    }
}
