mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use cigon_core::Error;

use args::{Cli, Format};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Argument(_) => EXIT_USAGE,
        Error::Hypothesis { .. } | Error::Threshold { .. } | Error::Exhausted { .. } => EXIT_FAILURE,
    }
}

fn error_json(err: &Error) -> serde_json::Value {
    let kind = match err {
        Error::Argument(_) => "argument",
        Error::Hypothesis { .. } => "hypothesis",
        Error::Threshold { .. } => "threshold",
        Error::Exhausted { .. } => "exhausted",
    };
    let mut value = serde_json::json!({ "error": { "kind": kind, "message": err.to_string() } });
    if let Error::Hypothesis { name, .. } = err {
        value["error"]["hypothesis"] = name.clone().into();
    }
    value
}

fn emit(cli: &Cli, body: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let (body, code) = match run::execute(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).unwrap()),
                Format::Text => report.text,
            };
            (body, report.code as u8)
        }
        Err(err) => {
            let code = exit_code(&err);
            match cli.format {
                Format::Json => {
                    let body = serde_json::to_string_pretty(&error_json(&err)).unwrap();
                    (format!("{body}\n"), code)
                }
                Format::Text => {
                    eprintln!("error: {err}");
                    return ExitCode::from(code);
                }
            }
        }
    };
    if let Err(err) = emit(&cli, &body) {
        eprintln!("error: cannot write report: {err}");
        return ExitCode::from(EXIT_FAILURE);
    }
    ExitCode::from(code)
}
