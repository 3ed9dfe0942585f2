use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod config;
mod error;
mod output;

use args::{Cli, Command};
use commands::Run;
use error::CliError;

const EXIT_MISMATCH: u8 = 2;
const EXIT_STRICT: u8 = 3;

fn dispatch(cli: &Cli) -> Result<Run, CliError> {
    let format = cli.format.unwrap_or_default();
    match &cli.command {
        Command::Invert(a) => commands::invert::run(a, format),
        Command::Faber(a) => commands::faber::run(a, format),
        Command::Expand(a) => commands::expand::run(a, format),
        Command::Bounds(a) => commands::bounds::run(a, format),
        Command::Verify(a) => commands::verify::run(a, format),
        Command::Sweep(a) => commands::sweep::run(a, cli.format),
    }
}

fn finish(run: Run) -> Result<ExitCode, CliError> {
    match &run.dest {
        Some(path) => std::fs::write(path, &run.output)?,
        None => std::io::stdout().lock().write_all(&run.output)?,
    }
    let mut err = std::io::stderr().lock();
    for line in &run.records {
        writeln!(err, "{line}")?;
    }
    for w in &run.warnings {
        writeln!(err, "warning: {w}")?;
    }
    if let Some(m) = &run.mismatch {
        writeln!(err, "error: internal oracle mismatch: {m}")?;
        return Ok(ExitCode::from(EXIT_MISMATCH));
    }
    if run.strict && !run.warnings.is_empty() {
        writeln!(err, "error: --strict and {} warning(s)", run.warnings.len())?;
        return Ok(ExitCode::from(EXIT_STRICT));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(&cli).and_then(finish) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
