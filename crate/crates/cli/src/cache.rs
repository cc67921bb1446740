//! On-disk cache of expensive derived artifacts (`P_i^[1]`, `P_i`, `R_i`).
//!
//! Every file carries the schema version and a SHA-256 stamp of the inputs
//! it was derived from (structure constants, t-cap, generator). A file whose
//! header does not match is treated as a miss and rewritten. Writes go to a
//! temporary file in the same directory which is then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use lie_jacobi_core::{CommPoly, LieStructure, SimpleType};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
const MAGIC: &str = "lie-jacobi cache";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Artifact {
    /// t-shifted Harish-Chandra image `P_i^[1]`.
    ShiftedImage,
    /// plain Harish-Chandra image `P_i`.
    PlainImage,
    /// `R_i` in `U(q)`.
    TakiffElement,
}

impl Artifact {
    fn stem(self) -> &'static str {
        match self {
            Artifact::ShiftedImage => "p1",
            Artifact::PlainImage => "p",
            Artifact::TakiffElement => "r",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtifactKey {
    pub simple_type: SimpleType,
    pub artifact: Artifact,
    /// Zero-based generator index.
    pub index: usize,
}

/// Stamp of everything an artifact for `generator` depends on.
pub fn version_stamp(lie: &LieStructure, generator: &CommPoly) -> String {
    let mut h = Sha256::new();
    h.update(format!("schema {SCHEMA_VERSION}\n"));
    h.update(format!("t-cap {}\n", lie.t_cap()));
    h.update(lie.structure_text());
    h.update("generator\n");
    h.update(generator.to_canonical_text());
    format!("{:x}", h.finalize())
}

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache {
            dir,
            ..Cache::default()
        }
    }

    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &ArtifactKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| {
            d.join(key.simple_type.to_string())
                .join(format!("{}-{}.txt", key.artifact.stem(), key.index + 1))
        })
    }

    /// Cached body for `key`, if present and stamped with `stamp`.
    pub fn load(&self, key: &ArtifactKey, stamp: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let mut lines = text.splitn(4, '\n');
        if lines.next()? != MAGIC
            || lines.next()? != format!("schema {SCHEMA_VERSION}")
            || lines.next()? != format!("stamp {stamp}")
        {
            return None;
        }
        Some(lines.next().unwrap_or("").to_string())
    }

    pub fn store(&self, key: &ArtifactKey, stamp: &str, body: &str) -> Result<(), CliError> {
        let Some(path) = self.path(key) else {
            return Ok(());
        };
        let parent = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(parent)?;
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        write!(tmp, "{MAGIC}\nschema {SCHEMA_VERSION}\nstamp {stamp}\n{body}")?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| CliError::Io(e.error))?;
        Ok(())
    }

    /// Loads `key` or computes and stores it. Unparseable entries are
    /// recomputed.
    pub fn get_or_compute<T>(
        &self,
        key: ArtifactKey,
        stamp: &str,
        encode: impl Fn(&T) -> String,
        decode: impl Fn(&str) -> lie_jacobi_core::Result<T>,
        compute: impl FnOnce() -> lie_jacobi_core::Result<T>,
    ) -> Result<T, CliError> {
        if let Some(value) = self.load(&key, stamp).and_then(|body| decode(&body).ok()) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(value);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = compute()?;
        self.store(&key, stamp, &encode(&value))?;
        Ok(value)
    }
}
