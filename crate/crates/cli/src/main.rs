mod cli;
mod commands;
mod dataset;
mod error;
mod report;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use freqstat::data::ScaleLevel;

use crate::cli::{Cli, Format};
use crate::dataset::{ingest_csv, Dataset};
use crate::error::{usage, CliError};
use crate::report::{ErrorBody, ErrorReport, Report, SCHEMA};

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn parse_schema(specs: &[String]) -> Result<Vec<(String, ScaleLevel)>, CliError> {
    specs
        .iter()
        .map(|s| {
            let (col, level) = s.split_once('=').ok_or_else(|| usage(format!("--scale expects COL=LEVEL, got '{s}'")))?;
            let level = level.parse().map_err(|_| usage(format!("unknown scale level '{level}'")))?;
            Ok((col.to_string(), level))
        })
        .collect()
}

fn load(cli: &Cli) -> Result<Option<Dataset>, CliError> {
    let schema = parse_schema(&cli.scale)?;
    match cli.data.as_deref() {
        None => Ok(None),
        Some("-") => ingest_csv(io::stdin().lock(), &schema).map(Some),
        Some(path) => {
            let f = File::open(path).map_err(|e| CliError::Data(format!("cannot open {path}: {e}")))?;
            ingest_csv(f, &schema).map(Some)
        }
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<Report, CliError> {
    let data = load(cli)?;
    let out = commands::run(&cli.command, data.as_ref(), cli.alpha)?;
    Ok(Report {
        schema: SCHEMA,
        version: VERSION,
        command: argv.to_vec(),
        inputs: out.inputs,
        results: out.results,
        warnings: out.warnings,
        seed: out.seed,
    })
}

fn emit(text: &str) -> ExitCode {
    let mut stdout = io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv = &args[1..];
    match execute(&cli, argv) {
        Ok(report) => emit(&match cli.format {
            Format::Json => report::to_json(&report),
            Format::Text => report::to_text(&report),
        }),
        Err(e) => {
            let body = ErrorReport {
                schema: SCHEMA,
                version: VERSION,
                command: argv.to_vec(),
                error: ErrorBody {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                },
            };
            let text = match cli.format {
                Format::Json => report::to_json(&body),
                Format::Text => report::to_text(&body),
            };
            let _ = emit(&text);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
