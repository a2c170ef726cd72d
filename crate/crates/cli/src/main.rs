use std::process::ExitCode;

use clap::Parser;
use coreconn_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, cfg) = cli.command.resolve();
    match run(kind, &cfg) {
        Ok(summary) => {
            for line in summary {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("coreconn: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
