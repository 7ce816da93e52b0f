mod args;
mod commands;

use std::io::{self, Write};
use std::panic;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{run, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = panic::catch_unwind(|| run(&cli.command));
    let (code, message) = match outcome {
        Ok(Ok(report)) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("JSON value serializes")
            } else {
                report.text
            };
            // A closed pipe (e.g. `| head`) is not an error of ours.
            let _ = writeln!(io::stdout().lock(), "{body}");
            return ExitCode::from(if report.ok { 0 } else { 1 });
        }
        Ok(Err(Failure::Usage(m))) => (2, m),
        Ok(Err(Failure::Internal(m))) => (3, format!("internal error: {m}")),
        Err(_) => (3, "internal error: a library invariant was violated".to_string()),
    };
    if cli.json {
        println!("{}", serde_json::json!({ "error": message }));
    } else {
        eprintln!("lewiskit: {message}");
    }
    ExitCode::from(code)
}
