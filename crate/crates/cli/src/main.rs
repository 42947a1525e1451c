use std::process::ExitCode;

use clap::Parser;
use plate_cli::{configure_threads, emit, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| {
        let report = run(&cli)?;
        emit(&cli, &report)?;
        Ok::<_, CliError>(report.passed)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("plate: assertion failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("plate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
