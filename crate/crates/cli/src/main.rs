//! `idemetric` command-line driver.
//!
//! Every subcommand writes a versioned JSON report (histograms and edge lists
//! go to CSV / plain text). Exit status: 0 on success, 1 for usage errors,
//! 2 for data errors.

mod args;
mod commands;
mod error;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::error::{exit_code, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; this tool reserves 2 for bad data.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            std::process::exit(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            std::process::exit(EXIT_USAGE);
        }
    }
    let mut clock = commands::Clock::new(cli.timings);
    if let Err(err) = commands::run(cli.command, &mut clock) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
