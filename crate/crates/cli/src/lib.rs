//! Reproducible verification runs over `lie-jacobi-core`: run
//! configuration, an on-disk artifact cache, the four report commands and
//! their JSON/table output.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::time::Instant;

pub use cache::Cache;
pub use config::{Command, Format, RunConfig};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
/// Some identity or property came out false.
pub const EXIT_FAILED: i32 = 1;
/// Bad arguments or an unsupported family/rank.
pub const EXIT_USAGE: i32 = 2;
/// I/O trouble or an unexpected algebraic error.
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lie_jacobi_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

/// Runs one command with the cache named in the configuration.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    run_with_cache(config, &Cache::new(config.cache_dir.clone()))
}

pub fn run_with_cache(config: &RunConfig, cache: &Cache) -> Result<Report, CliError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()?;
    let rows = pool.install(|| match config.command {
        Command::VerifyTheorem => commands::verify_theorem(config, cache),
        Command::Combinatorics => commands::combinatorics(config),
        Command::Takiff => commands::takiff(config, cache),
        Command::Projector => commands::projector(config),
    })?;
    let mut report = Report::new(config.command, config.summary(), rows);
    report.timing_secs = start.elapsed().as_secs_f64();
    Ok(report)
}
