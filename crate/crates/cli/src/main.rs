mod args;
mod commands;

use clap::Parser;
use std::process::ExitCode;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || commands::dispatch(&cli);
    let result = match cli.common.threads {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Failure::Other(format!("thread pool: {e}"))),
        },
        None => run(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("ruinlab: {f}");
            ExitCode::from(f.code())
        }
    }
}
