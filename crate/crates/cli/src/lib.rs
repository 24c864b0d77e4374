//! The `orbitq` command-line front end: configuration parsing, the JSON
//! report format and the subcommand runners.

pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use commands::{CliError, CliResult, Outcome, StarArgs};
use config::{Cli, Command, OrbitAction};

/// Exit code for a completed run whose check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;

/// Runs a parsed command, writes its outputs and returns the exit code.
pub fn run(cli: Cli) -> u8 {
    match execute(cli) {
        Ok(pass) => {
            if pass {
                0
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("orbitq: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> CliResult<bool> {
    let (outcome, common, csv_path) = match &cli.command {
        Command::Orbit { action: OrbitAction::Info { common } } => (commands::orbit_info(common)?, common, None),
        Command::Verify { check, common, quad, tol, shift } => {
            (commands::verify(*check, common, quad, *tol, *shift)?, common, None)
        }
        Command::Star { common, quad, u, v, slope_max, c1_max, csv } => {
            let args = StarArgs { u: *u, v: *v, slope_max: *slope_max, c1_max: *c1_max };
            let csv_path = csv.clone().or_else(|| common.output.as_ref().map(|p| p.with_extension("csv")));
            (commands::star(common, quad, &args)?, common, csv_path)
        }
    };
    write_outputs(&outcome, common.output.as_deref(), csv_path.as_deref())?;
    Ok(outcome.report.pass)
}

fn write_outputs(outcome: &Outcome, output: Option<&Path>, csv: Option<&Path>) -> Result<(), CliError> {
    let json = outcome.report.to_canonical_json();
    let mut stdout = std::io::stdout().lock();
    match output {
        Some(path) => {
            std::fs::write(path, &json)?;
            for line in &outcome.summary {
                writeln!(stdout, "{line}")?;
            }
            writeln!(stdout, "report written to {}", path.display())?;
        }
        None => {
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            stdout.write_all(json.as_bytes())?;
        }
    }
    if let (Some(path), Some(rows)) = (csv, &outcome.csv) {
        let mut text = rows.join("\n");
        text.push('\n');
        std::fs::write(path, text)?;
        if output.is_some() {
            writeln!(stdout, "series written to {}", PathBuf::from(path).display())?;
        }
    }
    Ok(())
}
