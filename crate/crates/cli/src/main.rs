mod cli;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use cli::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.into())
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Violation(m) => format!("violation: {m}"),
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Limit(m) => format!("resource limit: {m}"),
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}
