use std::process::ExitCode;

use clap::Parser;

use netcap::cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("netcap: {e}");
            e.exit_code()
        }
    }
}
