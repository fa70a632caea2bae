//! On-disk result cache: one JSON file per request, named by the hex SHA-256
//! of the canonical request.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::SCHEMA_VERSION;

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
    pub stale: usize,
}

/// Digest of `{"command", "params", "schema", "version"}`. serde_json keeps
/// object keys sorted, so equal requests serialize identically.
pub fn request_digest(command: &str, params: &Value) -> String {
    let canonical = json!({
        "command": command,
        "params": params,
        "schema": SCHEMA_VERSION,
        "version": env!("CARGO_PKG_VERSION"),
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    /// Cached output for `digest`; unreadable entries and other schema versions are misses.
    pub fn get(&self, digest: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(digest)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v["schema"] != json!(SCHEMA_VERSION) || v["digest"] != json!(digest) {
            return None;
        }
        v["payload"].as_str().map(str::to_string)
    }

    pub fn put(&self, digest: &str, payload: &str) -> Result<()> {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = json!({"schema": SCHEMA_VERSION, "digest": digest, "timestamp": stamp, "payload": payload});
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(entry.to_string().as_bytes())?;
        tmp.persist(self.path(digest)).map_err(|e| e.error)?;
        Ok(())
    }

    fn entries(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        for ent in fs::read_dir(&self.dir)? {
            let p = ent?.path();
            if p.extension().is_some_and(|x| x == "json") {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    fn is_current(p: &Path) -> bool {
        let Ok(text) = fs::read_to_string(p) else { return false };
        serde_json::from_str::<Value>(&text).is_ok_and(|v| v["schema"] == json!(SCHEMA_VERSION) && v["payload"].is_string())
    }

    pub fn stat(&self) -> Result<CacheStats> {
        let mut s = CacheStats::default();
        for p in self.entries()? {
            s.entries += 1;
            s.bytes += fs::metadata(&p)?.len();
            if !Self::is_current(&p) {
                s.stale += 1;
            }
        }
        Ok(s)
    }

    /// Removes entries from other schema versions or that fail to parse.
    pub fn gc(&self) -> Result<usize> {
        let mut n = 0;
        for p in self.entries()? {
            if !Self::is_current(&p) {
                fs::remove_file(&p)?;
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn clear(&self) -> Result<usize> {
        let all = self.entries()?;
        for p in &all {
            fs::remove_file(p)?;
        }
        Ok(all.len())
    }
}
