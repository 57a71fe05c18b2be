//! `famzv`: compute finite alternating multiple zeta values and verify the
//! sum formulas they satisfy.
//!
//! Exit status: 0 when every judged check holds, 1 on a verification
//! failure, 2 on a usage or IO error.

mod args;
mod execute;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match execute::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
