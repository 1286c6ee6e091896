//! `bitangents`: bitangents of plane quartics and the action of their
//! automorphism groups.
//!
//! Exit codes: 0 success, 1 a verification or lattice check did not match,
//! 2 a mathematical failure (wrong bitangent count, singular curve, no real
//! points to plot), 3 a usage or configuration error. Errors are written to
//! stderr as JSON; see [`schema`].

mod commands;
mod config;
mod error;
mod plot;
mod schema;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;
use error::{CliError, EXIT_MISMATCH, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "bitangents",
    version,
    about = "Bitangents of plane quartics and their symmetry orbits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the 28 bitangents.
    Solve(commands::SolveArgs),
    /// Orbits of the type's group on the bitangents.
    Orbits(commands::OrbitsArgs),
    /// Compare a type's decomposition with its expected pattern.
    Verify(commands::VerifyArgs),
    /// Verify all twelve types at their figure curves.
    VerifyAll(commands::VerifyAllArgs),
    /// Decompose the bitangents under a subgroup.
    Restrict(commands::RestrictArgs),
    /// Parameters of one family preserved by another type's generators.
    Specialize(commands::SpecializeArgs),
    /// Check the specialization lattice.
    Lattice(commands::LatticeArgs),
    /// Draw the real curve and its real bitangents as SVG.
    Plot(commands::PlotArgs),
    /// List the types, or describe one.
    Catalog(commands::CatalogArgs),
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Orbits(a) => commands::orbits(a),
        Command::Verify(a) => commands::verify(a),
        Command::VerifyAll(a) => commands::verify_all(a),
        Command::Restrict(a) => commands::restrict(a),
        Command::Specialize(a) => commands::specialize_cmd(a),
        Command::Lattice(a) => commands::lattice(a),
        Command::Plot(a) => commands::plot(a),
        Command::Catalog(a) => commands::catalog(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let message = e.render().to_string();
            eprintln!("{}", CliError::Usage(message.trim_end().into()).to_json());
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
