use std::path::PathBuf;

use clap::ValueEnum;
use lie_jacobi_core::rootdata::{Family, SimpleType};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyTheorem,
    Combinatorics,
    Takiff,
    Projector,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyTheorem => "verify-theorem",
            Command::Combinatorics => "combinatorics",
            Command::Takiff => "takiff",
            Command::Projector => "projector",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Everything that determines a run. Only `command`, `family`, `rank` and
/// `seed` can influence the report; the rest is plumbing.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub family: String,
    pub rank: usize,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; 0 lets the pool pick.
    pub jobs: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command, family: &str, rank: usize) -> Self {
        RunConfig {
            command,
            family: family.to_string(),
            rank,
            format: Format::Table,
            cache_dir: None,
            jobs: 1,
            seed: 0,
        }
    }

    pub fn summary(&self) -> ConfigSummary {
        let family = match self.family_selection() {
            Ok(Some(f)) => f.letter().to_string(),
            Ok(None) => "all".to_string(),
            Err(_) => self.family.clone(),
        };
        ConfigSummary {
            family,
            rank: self.rank,
            seed: self.seed,
        }
    }

    /// A single simple type; `all` is rejected here.
    pub fn simple_type(&self) -> Result<SimpleType, CliError> {
        let family = self.family_selection()?.ok_or_else(|| {
            CliError::Usage(format!("`{}` needs a single family, not `all`", self.command.name()))
        })?;
        SimpleType::new(family, self.rank).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// `None` stands for every family.
    pub fn family_selection(&self) -> Result<Option<Family>, CliError> {
        if self.family.eq_ignore_ascii_case("all") {
            return Ok(None);
        }
        Family::parse(&self.family)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("unknown family `{}`", self.family)))
    }
}

/// The part of the configuration recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigSummary {
    pub family: String,
    pub rank: usize,
    pub seed: u64,
}
