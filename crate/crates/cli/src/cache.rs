//! Append-only JSON-lines cache of counts.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use benzel_core::EngineKind;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "BENZEL_CACHE";
pub const DEFAULT_CACHE: &str = "benzel-cache.jsonl";
const LOCK_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionKey {
    pub kind: String,
    pub params: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineName {
    Plain,
    Memoized,
}

impl From<EngineKind> for EngineName {
    fn from(e: EngineKind) -> Self {
        match e {
            EngineKind::Plain => EngineName::Plain,
            EngineKind::Memoized => EngineName::Memoized,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub region: RegionKey,
    pub tileset: String,
    pub count: String,
    pub engine: EngineName,
    pub elapsed_ms: u64,
    pub created_at: String,
}

impl CacheRecord {
    pub fn new(
        region: RegionKey,
        tileset: String,
        count: &BigUint,
        engine: EngineKind,
        elapsed: Duration,
    ) -> Self {
        CacheRecord {
            schema_version: SCHEMA_VERSION,
            region,
            tileset,
            count: count.to_string(),
            engine: engine.into(),
            elapsed_ms: elapsed.as_millis() as u64,
            created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        }
    }

    pub fn value(&self) -> Option<BigUint> {
        self.count.parse().ok()
    }
}

type Key = (RegionKey, String);

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: Mutex<HashMap<Key, CacheRecord>>,
    writer: Mutex<()>,
    skipped: usize,
}

/// `--cache`, then `$BENZEL_CACHE`, then `./benzel-cache.jsonl`.
pub fn resolve_path(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

fn parse_line(line: &str) -> Result<CacheRecord, String> {
    let rec: CacheRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if rec.schema_version != SCHEMA_VERSION {
        return Err(format!("unsupported schema_version {}", rec.schema_version));
    }
    if rec.value().is_none() {
        return Err(format!(
            "count {:?} is not a nonnegative integer",
            rec.count
        ));
    }
    Ok(rec)
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn lock(path: &Path) -> CliResult<LockGuard> {
    let mut name = path.as_os_str().to_owned();
    name.push(".lock");
    let lock_path = PathBuf::from(name);
    let start = Instant::now();
    loop {
        match OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&lock_path)
        {
            Ok(_) => return Ok(LockGuard(lock_path)),
            Err(e)
                if e.kind() == io::ErrorKind::AlreadyExists && start.elapsed() < LOCK_TIMEOUT =>
            {
                thread::sleep(Duration::from_millis(10));
            }
            Err(e) => return Err(CliError::io(lock_path, e)),
        }
    }
}

impl Cache {
    /// Loads every valid record; later lines replace earlier ones with the same key.
    pub fn open(path: impl Into<PathBuf>) -> CliResult<Cache> {
        let path = path.into();
        let mut records = HashMap::new();
        let mut skipped = 0;
        match File::open(&path) {
            Ok(f) => {
                for (n, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|e| CliError::io(&path, e))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match parse_line(&line) {
                        Ok(rec) => {
                            records.insert((rec.region.clone(), rec.tileset.clone()), rec);
                        }
                        Err(e) => {
                            skipped += 1;
                            log::warn!(
                                "{}:{}: skipping corrupted cache line: {e}",
                                path.display(),
                                n + 1
                            );
                        }
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::io(&path, e)),
        }
        Ok(Cache {
            path,
            records: Mutex::new(records),
            writer: Mutex::new(()),
            skipped,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Lines ignored while loading.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn len(&self) -> usize {
        self.records.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, region: &RegionKey, tileset: &str) -> Option<CacheRecord> {
        self.records
            .lock()
            .unwrap()
            .get(&(region.clone(), tileset.to_string()))
            .cloned()
    }

    pub fn put(&self, rec: CacheRecord) -> CliResult<()> {
        self.put_all(std::slice::from_ref(&rec))
    }

    /// Appends records in one locked write.
    pub fn put_all(&self, recs: &[CacheRecord]) -> CliResult<()> {
        if recs.is_empty() {
            return Ok(());
        }
        let mut buf = String::new();
        for rec in recs {
            buf.push_str(&serde_json::to_string(rec).expect("cache records serialize"));
            buf.push('\n');
        }
        let _serial = self.writer.lock().unwrap();
        let _guard = lock(&self.path)?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io(&self.path, e))?;
        f.write_all(buf.as_bytes())
            .and_then(|_| f.flush())
            .map_err(|e| CliError::io(&self.path, e))?;
        let mut records = self.records.lock().unwrap();
        for rec in recs {
            records.insert((rec.region.clone(), rec.tileset.clone()), rec.clone());
        }
        Ok(())
    }
}
