use std::process::ExitCode;

use clap::Parser;
use twocore_cli::args::Cli;
use twocore_cli::{run, UsageError};

/// Worker threads for the sampling pool; affects speed only.
const THREADS_ENV: &str = "TWOCORE_THREADS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = cli.command.into_config().and_then(|cfg| run(&cfg));
    match result {
        Ok(summary) => {
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
