mod args;
mod commands;
mod table;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cutoff(a) => commands::run_cutoff(&a),
        Command::Force(a) => commands::run_force(&a),
        Command::Energy(a) => commands::run_energy(&a),
        Command::Verify(a) => commands::run_verify(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerificationFailed(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
