//! `lamiq`: exact Voronoi cells and second moments of laminated lattices.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

/// Exit codes by error family.
fn exit_code(e: &lamiq::LamiqError) -> u8 {
    use lamiq::LamiqError::*;
    match e {
        Domain(_) | Parse(_) | InvalidInput(_) => 3,
        Resource(_) | Io(_) => 4,
        _ if e.is_consistency() => 5,
        _ => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.common.workers).build_global() {
        eprintln!("lamiq: cannot start worker pool: {e}");
        return ExitCode::from(4);
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lamiq: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
