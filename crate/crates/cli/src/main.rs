use std::process::ExitCode;

use clap::Parser;
use jumpstat::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("jumpstat: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
