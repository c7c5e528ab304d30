use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::surface::HomogeneousForm;

use super::count::{CountRecord, CountSource};

/// Identifies the reduction of a quartic modulo `p`: SHA-256 of `p` and the
/// canonical rendering of the reduced form. Counts depend only on this.
pub fn reduction_hash(form: &HomogeneousForm, p: u32) -> String {
    let canonical = format!("p={p};h={}", form.reduce_mod(p));
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// One line of the cache file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub surface_hash: String,
    pub p: u32,
    pub n: u32,
    pub count: u64,
    pub source: CountSource,
    pub wall_time_ms: u64,
}

impl CacheRecord {
    pub fn record(&self) -> CountRecord {
        CountRecord {
            p: self.p,
            n: self.n,
            count: self.count,
            source: self.source,
        }
    }
}

/// Append-only JSON-lines file of point counts.
#[derive(Clone, Debug)]
pub struct CountCache {
    path: PathBuf,
}

impl CountCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        CountCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file reads as empty.
    pub fn load(&self) -> Result<Vec<CacheRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = serde_json::from_str(&line)
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", self.path.display(), i + 1)))?;
            out.push(rec);
        }
        Ok(out)
    }

    pub fn append(&self, rec: &CacheRecord) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", serde_json::to_string(rec)?)?;
        Ok(())
    }

    /// First record matching the reduction hash and `(p, n)`.
    pub fn lookup(&self, surface_hash: &str, p: u32, n: u32) -> Result<Option<CacheRecord>> {
        Ok(self
            .load()?
            .into_iter()
            .find(|r| r.surface_hash == surface_hash && r.p == p && r.n == n))
    }
}
