use std::process::ExitCode;

use bochner_core::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            println!(
                "wrote {} and {}",
                outcome.csv.display(),
                outcome.json.display()
            );
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
