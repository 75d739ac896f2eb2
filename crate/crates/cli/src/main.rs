mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use config::{Cli, RunConfig};
use error::CliError;
use report::Failure;

#[derive(Serialize)]
struct FailureSummary<'a> {
    status: &'static str,
    failures: &'a [Failure],
}

fn report_failures(failures: &[Failure]) {
    let summary = FailureSummary { status: "fail", failures };
    let text = serde_json::to_string(&summary).expect("plain strings serialize");
    eprintln!("{text}");
}

fn run(cli: Cli) -> Result<Vec<Failure>, CliError> {
    let config = RunConfig::from_cli(cli)?;
    let report = commands::run(&config)?;
    let bytes = report.render()?;
    match &config.out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(report.failures)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            report_failures(&failures);
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("thinex: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            report_failures(&[Failure { check: "computation".into(), detail: e.to_string() }]);
            ExitCode::from(1)
        }
    }
}
