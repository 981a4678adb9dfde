//! Command-line front end: file formats, structured reports and handlers.

pub mod args;
pub mod commands;
pub mod format;
pub mod report;

pub use args::Cli;
pub use commands::{run, CliError};
pub use report::Report;

/// Parses argv, runs, prints, and returns the exit code: 0 pass, 1 check
/// failure, 2 input error.
pub fn main_with(argv: impl IntoIterator<Item = String>, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32 {
    use clap::Parser;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(&cli) {
        Ok(r) => {
            let text = if cli.json { r.to_json() + "\n" } else { r.to_text() };
            let _ = out.write_all(text.as_bytes());
            if r.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
