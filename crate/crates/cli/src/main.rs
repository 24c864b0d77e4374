use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(orbitq_cli::run(orbitq_cli::config::Cli::parse()))
}
