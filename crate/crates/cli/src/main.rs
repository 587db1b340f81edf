//! `supersinglet`: data on stdout (JSON or CSV), a one-line summary on stderr.
//!
//! Exit codes: 0 success, 1 invalid input, 2 resource limit, 3 internal consistency failure.

mod cli;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use supersinglet_core::Error;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 1,
        Error::ResourceLimit { .. } => 2,
        Error::Internal(_) => 3,
    }
}

fn main() -> ExitCode {
    let args = match cli::Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = commands::run(&args.command, &args.common)
        .and_then(|report| Ok((output::render(&report, args.common.format)?, report.summary)));
    match result {
        Ok((data, summary)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(data.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
