use std::process::ExitCode;

use clap::Parser;
use entagg::cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    match run(&cfg) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
