use std::process::ExitCode;

use clap::Parser;
use layerfd_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
