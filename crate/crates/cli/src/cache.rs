//! On-disk result cache.
//!
//! One file per key. Readers take a shared lock and writers an exclusive
//! lock on `<dir>/.lock`; entries are written to a temporary file and renamed
//! into place, so a reader never sees a partial entry.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qinstanton_core::bspace::SCHEMA_VERSION;

pub const CACHE_ENV: &str = "QINSTANTON_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    key: String,
    digest: String,
    passed: bool,
    value: String,
}

/// A cached command result: the exact emitted JSON and whether its checks
/// passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub value: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn digest(value: &str, passed: bool) -> String {
    let mut h = Sha256::new();
    h.update(value.as_bytes());
    h.update([u8::from(passed)]);
    hex::encode(h.finalize())
}

/// Key over the command, its parameters and the schema version.
pub fn key(command: &str, params: &Value) -> String {
    let doc = json!({
        "command": command,
        "params": params,
        "schema_version": SCHEMA_VERSION,
    });
    sha256_hex(doc.to_string().as_bytes())
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The cache named by `QINSTANTON_CACHE`, if set and non-empty.
    pub fn from_env() -> io::Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::open(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn lock_file(&self) -> io::Result<File> {
        OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(".lock"))
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A hit only if the stored key and digest both match.
    pub fn get(&self, key: &str) -> io::Result<Option<Hit>> {
        let lock = self.lock_file()?;
        lock.lock_shared()?;
        let text = match fs::read_to_string(self.entry_path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        drop(lock);
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
            return Ok(None);
        };
        if entry.key != key || entry.digest != digest(&entry.value, entry.passed) {
            return Ok(None);
        }
        Ok(Some(Hit {
            value: entry.value,
            passed: entry.passed,
        }))
    }

    pub fn put(&self, key: &str, value: &str, passed: bool) -> io::Result<()> {
        let entry = Entry {
            key: key.to_string(),
            digest: digest(value, passed),
            passed,
            value: value.to_string(),
        };
        let lock = self.lock_file()?;
        lock.lock()?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.entry_path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let k = key("pn", &json!({"n": 1}));
        assert_ne!(k, key("pn", &json!({"n": 2})));
        assert_eq!(cache.get(&k).unwrap(), None);
        cache.put(&k, "{\n  \"n\": 1\n}\n", false).unwrap();
        let hit = cache.get(&k).unwrap().unwrap();
        assert_eq!(hit.value, "{\n  \"n\": 1\n}\n");
        assert!(!hit.passed);

        let path = cache.entry_path(&k);
        let tampered = fs::read_to_string(&path).unwrap().replace("\\\"n\\\": 1", "\\\"n\\\": 7");
        fs::write(&path, tampered).unwrap();
        assert_eq!(cache.get(&k).unwrap(), None);
        fs::write(&path, "not json").unwrap();
        assert_eq!(cache.get(&k).unwrap(), None);
    }
}
