use std::io::Write;
use std::process::ExitCode;

use purity_cli::commands::{run_args, EXIT_INPUT};

fn main() -> ExitCode {
    let outcome = run_args(std::env::args_os());
    let written = if outcome.code == EXIT_INPUT {
        std::io::stderr().write_all(outcome.report.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.report.as_bytes())
    };
    match written {
        Ok(()) => ExitCode::from(outcome.code as u8),
        Err(_) => ExitCode::from(EXIT_INPUT as u8),
    }
}
