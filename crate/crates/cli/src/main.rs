//! `qg`: command-line front end for the `quasigroup` crate.
//!
//! Exit codes:
//!
//! - 0: success, or the property holds
//! - 1: the property does not hold (not isotopic, no certificate, ...)
//! - 2: invalid input or arguments
//! - 3: search budget exhausted

mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Context;
use crate::report::{InputDigest, RunReport, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut ctx = Context {
        digest: InputDigest::default(),
        threads: usize::try_from(cli.threads).unwrap_or(usize::MAX),
    };
    let command = commands::name(&cli.command);
    let outcome = commands::run(&cli.command, &mut ctx);
    let elapsed_ms = cli.timing.then(|| started.elapsed().as_secs_f64() * 1e3);
    let input_digest = ctx.digest.finish();

    let (exit, report) = match outcome {
        Ok(out) => {
            if !cli.json {
                print!("{}", out.text);
            }
            let report = RunReport {
                command: command.to_string(),
                input_digest,
                exit_code: out.exit,
                elapsed_ms,
                error: None,
                result: out.result,
            };
            (out.exit, report)
        }
        Err(e) => {
            eprintln!("qg {command}: {e}");
            let report = RunReport {
                command: command.to_string(),
                input_digest,
                exit_code: EXIT_INPUT,
                elapsed_ms,
                error: Some(e.to_string()),
                result: serde_json::Value::Null,
            };
            (EXIT_INPUT, report)
        }
    };
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    }
    ExitCode::from(exit)
}
