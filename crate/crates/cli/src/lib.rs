//! Text format and command dispatch for the `descent-ss` binary.

pub mod build;
pub mod commands;
pub mod format;

use descent_ss::Error;

pub use commands::{Options, Report};
pub use format::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Snf,
    Cohomology,
    Cohomotopy,
    Pi1,
    SsCompare,
    Cech,
    Brauer,
}

/// Runs `cmd` on the file contents `input`; `Err` is an input error (exit code 2).
pub fn run(cmd: Command, input: Option<&str>, opts: &Options) -> Result<Report, Error> {
    let doc = input.map(Document::parse).transpose()?;
    let need = || doc.as_ref().ok_or_else(|| Error::Parse { line: 0, col: 0, msg: "this command needs --input".into() });
    match cmd {
        Command::Snf => commands::snf(need()?),
        Command::Cohomology => commands::cohomology(need()?, opts),
        Command::Cohomotopy => commands::cohomotopy(need()?, opts),
        Command::Pi1 => commands::pi1(need()?),
        Command::SsCompare => commands::ss_compare(doc.as_ref(), opts),
        Command::Cech => commands::cech(need()?, opts),
        Command::Brauer => commands::brauer(need()?),
    }
}

/// The message printed for an input error.
pub fn error_message(e: &Error) -> String {
    match e {
        Error::Parse { line: 0, msg, .. } => format!("error: {msg}"),
        Error::Parse { line, col, msg } => format!("error: line {line}, column {col}: {msg}"),
        other => format!("error: {other}"),
    }
}
