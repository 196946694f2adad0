//! Command line front end for `tcrcalc`.

pub mod args;
pub mod commands;
pub mod fixtures;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use tcrcalc::{Ctx, Error};

use args::{Cli, Command, Format};

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub(crate) fn error_outcome(e: &Error, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => {
            let mut v = json!({
                "error": {
                    "kind": kind(e),
                    "message": e.to_string(),
                    "exit_code": e.exit_code(),
                }
            });
            if let Error::Refused { hypothesis, detail } = e {
                v["error"]["hypothesis"] = json!(hypothesis);
                v["error"]["detail"] = json!(detail);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => String::new(),
    };
    Outcome {
        code: e.exit_code(),
        stdout,
        stderr: format!("error: {e}\n"),
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::Refused { .. } => "refused",
        Error::Unstable { .. } => "unstable",
        Error::Bound(_) => "bound",
        Error::Cancelled => "cancelled",
        Error::Internal(_) => "internal",
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, ctx: &Ctx) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome { code, stdout, stderr };
        }
    };
    if let Command::Fixtures(f) = &cli.command {
        return fixtures::run_suite(f, cli.format, ctx);
    }
    match commands::dispatch(&cli.command, ctx) {
        Ok(out) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => out.text,
            },
            stderr: String::new(),
        },
        Err(e) => error_outcome(&e, cli.format),
    }
}
