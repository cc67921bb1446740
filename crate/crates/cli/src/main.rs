use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use lie_jacobi::{Command, Format, Report, RunConfig, EXIT_RUNTIME};

/// Exact verification of Jacobians of t-shifted invariants and related
/// identities for simple Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "lie-jacobi", version)]
#[command(after_help = "Exit status: 0 all checks pass, 1 some check failed, \
2 usage error or unsupported selection, 3 runtime error.")]
struct Cli {
    /// What to verify.
    #[arg(value_enum)]
    command: Command,
    /// Family letter (A, B, C, D, G2); `combinatorics` also accepts `all`.
    family: String,
    /// Rank (for `combinatorics`: largest rank of the sweep).
    rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Directory for cached P_i^[1], P_i and R_i.
    #[arg(long, env = "LIE_JACOBI_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Seed for the random property samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn emit(report: &Report, format: Format) -> anyhow::Result<()> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).context("writing report")?;
    out.flush().context("writing report")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        command: cli.command,
        family: cli.family,
        rank: cli.rank,
        format: cli.format,
        cache_dir: cli.cache,
        jobs: cli.jobs,
        seed: cli.seed,
    };
    let code = match lie_jacobi::run(&config) {
        Ok(report) => match emit(&report, config.format) {
            Ok(()) => report.exit_code(),
            Err(e) => {
                eprintln!("lie-jacobi: {e:#}");
                EXIT_RUNTIME
            }
        },
        Err(e) => {
            eprintln!("lie-jacobi: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
