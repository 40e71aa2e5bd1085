//! Append-only JSON-lines scan cache, one record per (m, n, flags).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use modpart_core::verify::{Cell, Status};

pub const CACHE_ENV: &str = "MODPART_CACHE_DIR";
const DEFAULT_DIR: &str = ".modpart-cache";
const FILE_NAME: &str = "scan.jsonl";

/// Result of verifying every type cell at one n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub m: u32,
    pub n: u32,
    pub status: Status,
    pub counts_hash: String,
    pub flags: BTreeMap<String, String>,
    pub version: String,
    pub timestamp: u64,
    pub cells: Vec<Cell>,
}

impl ScanRecord {
    pub fn new(m: u32, n: u32, flags: BTreeMap<String, String>, cells: Vec<Cell>) -> Self {
        let status = if cells.iter().all(Cell::is_verified) { Status::Verified } else { Status::Mismatch };
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Self {
            m,
            n,
            status,
            counts_hash: counts_hash(&cells),
            flags,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            cells,
        }
    }

    /// Trusted for reuse only if verified and its cells still hash to the stored value.
    pub fn reusable(&self) -> bool {
        self.status == Status::Verified && self.counts_hash == counts_hash(&self.cells)
    }
}

/// SHA-256 over the canonical lines of the cells, sorted.
pub fn counts_hash(cells: &[Cell]) -> String {
    let mut lines: Vec<String> = cells.iter().map(Cell::canonical).collect();
    lines.sort();
    let mut h = Sha256::new();
    for l in &lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

type Key = (u32, u32, BTreeMap<String, String>);

pub struct ScanCache {
    path: PathBuf,
    records: BTreeMap<Key, ScanRecord>,
}

impl ScanCache {
    pub fn dir_from_env() -> PathBuf {
        std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_DIR), PathBuf::from)
    }

    /// Loads the cache; later lines override earlier ones for the same key.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(FILE_NAME);
        let mut records = BTreeMap::new();
        if path.exists() {
            let file = fs::File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: ScanRecord = serde_json::from_str(&line)
                    .with_context(|| format!("{}:{}: malformed record", path.display(), i + 1))?;
                records.insert((rec.m, rec.n, rec.flags.clone()), rec);
            }
        }
        Ok(Self { path, records })
    }

    pub fn get(&self, m: u32, n: u32, flags: &BTreeMap<String, String>) -> Option<&ScanRecord> {
        self.records.get(&(m, n, flags.clone()))
    }

    pub fn append(&mut self, new: Vec<ScanRecord>) -> Result<()> {
        if new.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        for rec in new {
            writeln!(file, "{}", serde_json::to_string(&rec)?)?;
            self.records.insert((rec.m, rec.n, rec.flags.clone()), rec);
        }
        Ok(())
    }
}
