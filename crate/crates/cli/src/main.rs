//! `qs`: command-line front end for the `qs-core` computations.
//!
//! Exit codes: 0 success, 1 invalid input, 2 resource cap or range error,
//! 3 a verification failed.

mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Resource(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Resource(_) | Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Resource(m) | Failure::Io(m) => m,
        }
    }
}

impl From<qs_core::Error> for Failure {
    fn from(e: qs_core::Error) -> Self {
        match e {
            qs_core::Error::Domain(_) | qs_core::Error::Empty(_) => Failure::Invalid(e.to_string()),
            qs_core::Error::Range(_) | qs_core::Error::Resource { .. } => Failure::Resource(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("QS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Invalid(format!("QS_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Resource(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let run = configure_threads().and_then(|()| commands::run(cli));
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("qs: verification failed");
            ExitCode::from(3)
        }
        Err(f) => {
            eprintln!("qs: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
