//! Command front end: run configuration, the five commands and their md/csv/json renderings.

mod commands;
mod config;
mod render;
mod selfcheck;

pub use commands::{cmd_auts, cmd_fixtable, cmd_pi1, cmd_quotients, quotient_line};
pub use config::{split_generators, Format, RunConfig, Selector};
pub use render::{AutLine, CheckLine, FixLine, Pi1Line, QuotientLine, Report};
pub use selfcheck::{cmd_selfcheck, normal_form_check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Usage(_) | ReportError::Parse { .. } => 1,
            ReportError::Consistency(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Fixtable,
    Quotients,
    Auts,
    Pi1,
    Selfcheck,
}

/// Runs a command and renders it; a failed selfcheck is reported as a consistency failure
/// after its output has been produced.
pub fn run(command: Command, config: &RunConfig) -> Result<(String, bool), ReportError> {
    let report = match command {
        Command::Fixtable => cmd_fixtable(config)?,
        Command::Quotients => cmd_quotients(config)?,
        Command::Auts => cmd_auts(config)?,
        Command::Pi1 => cmd_pi1(config)?,
        Command::Selfcheck => cmd_selfcheck(config)?,
    };
    Ok((report.render(config.format), report.passed()))
}
