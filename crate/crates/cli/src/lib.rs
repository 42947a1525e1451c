//! The `plate` command-line tool: closed-form ball quantities, two-ball
//! sweeps, grid solves and the verification suites.
//!
//! Every command returns a [`Report`]; the binary decides where it goes and
//! maps the outcome to an exit code (0 success, 1 failed assertion or
//! computation, 2 usage error).

pub mod args;
pub mod commands;
pub mod error;
pub mod svg;

pub use args::Cli;
pub use commands::{run, Report};
pub use error::CliError;

/// Size the global rayon pool from `PLATE_THREADS` if it is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PLATE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| error::usage(format!("PLATE_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Failed(e.to_string()))
}

/// Write the report and any side files.
pub fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    for (path, content) in &report.extra {
        std::fs::write(path, content)?;
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &report.body)?,
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(report.body.as_bytes())?;
        }
    }
    Ok(())
}
