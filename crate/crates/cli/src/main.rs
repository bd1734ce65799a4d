//! `envelope`: catalog listing, verification reports and invariant bases
//! for enveloping algebras of small nilpotent Lie algebras.
//!
//! Exit codes: 0 when every checked claim passes, 1 when a claim fails,
//! 2 for usage errors and unmet preconditions.

mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use envelope_core::enveloping::DEFAULT_DEGREE_CAP;

use cli::{Cli, Command};

const DEGREE_CAP_VAR: &str = "ENVELOPE_DEGREE_CAP";

fn degree_cap() -> Result<usize, String> {
    match std::env::var(DEGREE_CAP_VAR) {
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!(
                "{DEGREE_CAP_VAR} must be a positive integer, got `{v}`"
            )),
        },
    }
}

fn run(cli: &Cli) -> commands::CmdResult {
    let cap = degree_cap()?;
    match &cli.command {
        Command::List { dim } => commands::list(*dim, cli.format),
        Command::Verify { target, bounds } => {
            commands::verify(target, &bounds.options(), cap, cli.format)
        }
        Command::VerifyAll {
            only_table3,
            p,
            bounds,
        } => commands::verify_all(*only_table3, *p, &bounds.options(), cap, cli.format),
        Command::Macaulay2Check { p } => commands::macaulay2(*p, cli.format),
        Command::Invariants { target, degree } => commands::invariants(target, *degree, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
