mod args;
mod bench;
mod commands;
mod io;

use std::process::ExitCode;

use chroma_core::{BoundReport, Certificate};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command};

pub const EXIT_VERIFIED: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_UNKNOWN: u8 = 3;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<chroma_core::Error> for CliError {
    fn from(e: chroma_core::Error) -> Self {
        let code = match e {
            chroma_core::Error::Internal(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Violation,
    Unknown,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Verified => EXIT_VERIFIED,
            Status::Violation => EXIT_VIOLATION,
            Status::Unknown => EXIT_UNKNOWN,
        }
    }
}

/// Pass/fail outcome recomputed from the produced structures.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Verdict {
    pub status: Option<Status>,
    pub violations: Vec<String>,
    pub undecided: Vec<String>,
}

impl Verdict {
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(message());
        }
    }

    pub fn unknown(&mut self, message: impl Into<String>) {
        self.undecided.push(message.into());
    }

    pub fn finish(mut self) -> Self {
        self.status = Some(if !self.violations.is_empty() {
            Status::Violation
        } else if !self.undecided.is_empty() {
            Status::Unknown
        } else {
            Status::Verified
        });
        self
    }
}

#[derive(Debug, Serialize)]
pub struct ReportBundle {
    pub command: String,
    pub config: serde_json::Value,
    pub instance_digest: Option<String>,
    pub certificate: Option<Certificate>,
    pub result: serde_json::Value,
    pub bounds: Option<BoundReport>,
    pub verdict: Verdict,
}

impl ReportBundle {
    pub fn new(command: &str, config: &impl Serialize) -> Self {
        ReportBundle {
            command: command.to_string(),
            config: serde_json::to_value(config).expect("config serializes"),
            instance_digest: None,
            certificate: None,
            result: serde_json::Value::Null,
            bounds: None,
            verdict: Verdict::default(),
        }
    }

    /// Finalises the verdict, writes the bundle and returns the exit code.
    pub fn write(mut self, output: Option<&std::path::Path>) -> Result<u8, CliError> {
        self.verdict = std::mem::take(&mut self.verdict).finish();
        io::emit(output, &io::pretty(&self))?;
        Ok(self.verdict.status.expect("finished").code())
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen(cmd) => commands::gen(cmd),
        Command::Tc(a) => commands::tc(a),
        Command::Cp(a) => commands::cp(a),
        Command::Transversal(a) => commands::transversal(a),
        Command::Cover(cmd) => commands::cover(cmd),
        Command::Kit(cmd) => commands::kit(cmd),
        Command::Hub(cmd) => commands::hub(cmd),
        Command::Verify(a) => commands::verify(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Bench(a) => bench::bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_VERIFIED };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
