//! `logfront`: command-line front end to the log-front library.
//!
//! Every subcommand prints one JSON document (or writes it to `-o`). Exit
//! codes: 0 success, 2 when a computed polygon does not match the
//! prediction, 1 on any error.

mod commands;
mod json;

use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, CliError};

fn threads_from_env() -> Result<(), CliError> {
    let Ok(v) = std::env::var("LOGFRONT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("LOGFRONT_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(CliError::Usage("LOGFRONT_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = threads_from_env().and_then(|_| commands::run(&cli));
    match outcome {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            let doc = serde_json::json!({
                "error": { "code": e.code(), "message": e.to_string() },
                "provenance": commands::provenance(),
            });
            print!("{}", json::render(&doc));
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
