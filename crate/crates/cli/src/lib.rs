//! Command-line harness: seeded exchanges, attack runs, MOBS solution counts
//! and timing sweeps, with JSON or CSV reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;
pub mod transcript;

use std::fmt;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;

/// A problem with the command line, parameter file or transcript file.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        args::Command::Exchange(a) => commands::exchange::run(&a),
        args::Command::Attack(a) => commands::attack::run(&a),
        args::Command::Bench(a) => commands::bench::run(&a),
        args::Command::Count(a) => commands::count::run(&a),
    }
}

/// Exit code for an error returned by [`run`].
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use sdpke::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::NotApplicable(_) => EXIT_NOT_APPLICABLE,
                E::SizeLimit { .. } => EXIT_SIZE_CAP,
                E::Internal(_) | E::NotInvertible => EXIT_FAILED,
                _ => EXIT_CONFIG,
            };
        }
        if cause.is::<ConfigError>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_CONFIG;
        }
    }
    EXIT_FAILED
}
