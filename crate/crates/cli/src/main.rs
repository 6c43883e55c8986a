mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use gerbe_core::io::to_canonical_string;
use gerbe_core::GerbeError;

use args::Cli;

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = GerbeError::MalformedInput(e.to_string().trim().to_string());
            print!("{}", to_canonical_string(&error_json(err.kind(), &e.to_string())));
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let config = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    match commands::run(&cli.command) {
        Ok(result) => {
            let mut out = json!({ "config": config });
            match result {
                Value::Object(m) => out.as_object_mut().expect("object").extend(m),
                other => {
                    out["result"] = other;
                }
            }
            print!("{}", to_canonical_string(&out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let mut out = error_json(e.kind(), &e.to_string());
            out["config"] = config;
            print!("{}", to_canonical_string(&out));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
