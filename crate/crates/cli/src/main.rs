mod args;
mod common;
mod design;
mod entdetect;
mod error;
mod eur;
mod output;
mod selftest;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult, EXIT_OK, EXIT_USAGE};
use output::RunManifest;

fn dispatch(cmd: &Command) -> CliResult<()> {
    match cmd {
        Command::Design(c) => design::run(c),
        Command::Eur(c) => eur::run(c),
        Command::Entdetect(c) => entdetect::run(c),
        Command::Selftest(a) => selftest::run(a),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}

fn execute(mut cmd: Command) -> CliResult<()> {
    if let Command::Replay(r) = &cmd {
        let manifest = RunManifest::load(&r.manifest)?;
        let mut recorded = manifest.parameters;
        if matches!(recorded, Command::Replay(_)) {
            return error::usage("a manifest cannot record another replay");
        }
        if let Some(out) = &r.out {
            if !recorded.set_out(out.clone()) {
                return error::usage(format!("'{}' does not write a data file", recorded.name()));
            }
        }
        cmd = recorded;
    }
    let start = Instant::now();
    dispatch(&cmd)?;
    if cmd.writes_data() {
        RunManifest::new(&cmd, start.elapsed().as_secs_f64()).emit()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::exit_code(&e))
        }
    }
}
