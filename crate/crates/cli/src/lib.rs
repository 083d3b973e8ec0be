//! Command-line front end for `msk-core`.
//!
//! `msk moments-check`, `msk symbol`, `msk circle` and `msk weil` read the
//! shared family-file format (or a moment list), run the corresponding
//! pipeline and write a JSON report with sorted keys. Exit code 0 means every
//! gate passed, 2 means a mathematical gate failed, 1 means the call itself
//! was wrong (bad flags, unreadable or malformed input).

pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{Cli, Outcome};

fn side_path(out: &std::path::Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Parses `args`, runs the command, writes its outputs and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let outcome = match commands::execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return 1;
        }
    };
    let text = outcome.report.render(&timestamp());
    match &outcome.out {
        Some(out) => {
            if let Err(e) = std::fs::write(out, &text) {
                eprintln!("error: {}: {e}", out.display());
                return 1;
            }
            for (suffix, body) in &outcome.side_files {
                let path = side_path(out, suffix);
                if let Err(e) = std::fs::write(&path, body) {
                    eprintln!("error: {}: {e}", path.display());
                    return 1;
                }
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
        }
    }
    outcome.report.exit_code()
}
