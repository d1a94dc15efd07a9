mod args;
mod commands;

use args::{Cli, Format};
use clap::error::ErrorKind;
use clap::Parser;
use commands::Artifact;
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use zetarules::datasets::save_dataset_with_notes;
use zetarules::Error;

const EXIT_COMPUTATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "pole",
        Error::Accuracy { .. } => "accuracy",
        Error::Domain(_) => "domain",
        Error::NoSignChange { .. } => "no_sign_change",
        Error::Radius { .. } => "radius",
        Error::Convergence(_) => "convergence",
        Error::RangeMismatch(_) => "range_mismatch",
        Error::EmptyWindow { .. } => "empty_window",
        Error::OpenContour { .. } => "open_contour",
        Error::Checksum { .. } => "checksum",
        Error::Schema(_) => "schema",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    let body = json!({ "error": { "kind": kind, "message": message, "exit_code": code } });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn render(art: &Artifact, format: Format, precision: bool) -> Result<String, Error> {
    Ok(match format {
        Format::Csv => {
            let mut out = art.csv.clone();
            if precision {
                for (k, v) in &art.precision {
                    out.push_str(&format!("# precision {k}={v}\n"));
                }
            }
            out
        }
        Format::Json => {
            let mut v = art.json.clone();
            if precision {
                if let Value::Object(map) = &mut v {
                    map.insert("precision_report".into(), Value::Object(art.precision.clone()));
                } else {
                    v = json!({ "data": v, "precision_report": art.precision });
                }
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
    })
}

fn emit(cli: &Cli, art: &Artifact) -> Result<(), Error> {
    match (&cli.output, &art.dataset, cli.format) {
        (Some(path), Some(ds), Format::Csv) => {
            let notes: Vec<String> = if cli.precision_report {
                art.precision.iter().map(|(k, v)| format!("precision {k}={v}")).collect()
            } else {
                Vec::new()
            };
            save_dataset_with_notes(ds, path, &notes)?;
        }
        (Some(path), _, format) => {
            let text = render(art, format, cli.precision_report)?;
            write_file(path, text.as_bytes())?;
        }
        (None, _, format) => {
            let text = render(art, format, cli.precision_report)?;
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, bytes)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            return fail(EXIT_USAGE, "usage", msg.trim());
        }
    };
    let art = match commands::run(&cli.command) {
        Ok(a) => a,
        Err(e) => return fail(EXIT_COMPUTATION, error_kind(&e), &e.to_string()),
    };
    match emit(&cli, &art) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_COMPUTATION, error_kind(&e), &e.to_string()),
    }
}
