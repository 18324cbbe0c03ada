mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use grplab_core::lab::OutputFormat;
use grplab_core::Error;
use serde_json::Value;

use args::Cli;
use commands::{Output, Settings};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    }
    let settings = Settings::resolve(&cli.global)?;
    let text = match commands::run(&cli.command, &settings)? {
        Output::Report { json, csv } => match settings.format {
            OutputFormat::Json => json,
            OutputFormat::Csv => csv,
        },
        Output::Doc(doc) => match settings.format {
            OutputFormat::Json => serde_json::to_string_pretty(&doc).expect("json") + "\n",
            OutputFormat::Csv => flat_csv(&doc)?,
        },
    };
    match &cli.global.out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Header plus one row from the top-level fields; nested values stay JSON.
fn flat_csv(doc: &Value) -> Result<String, Error> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::InvalidParameter("output is not a flat record".into()))?;
    let cell = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::InvalidParameter(format!("csv output: {e}"));
    w.write_record(obj.keys()).map_err(err)?;
    w.write_record(obj.values().map(cell)).map_err(err)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidParameter(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}
