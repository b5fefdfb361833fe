use std::process::ExitCode;

use clap::Parser;

use evenodd_gg::cli::{run, Cli, RunConfig, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&RunConfig::from(&cli)) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(err) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return ExitCode::from(EXIT_ERROR as u8);
            }
        }
        None => print!("{}", outcome.output),
    }
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.summary.exit_code() as u8)
}
