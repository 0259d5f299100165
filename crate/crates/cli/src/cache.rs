//! On-disk table cache: one JSON file per table, checksummed and written
//! atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use knutson::table::CharacterTable;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliResult;

pub const FORMAT_VERSION: &str = concat!("1-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub key: String,
    pub checksum: String,
    /// Serialized table.
    pub payload: String,
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// `KNUTSON_CACHE_DIR`, else `<data dir>/knutson`.
    pub fn from_env() -> Option<Self> {
        if let Some(dir) = std::env::var_os("KNUTSON_CACHE_DIR") {
            return Some(Cache::new(PathBuf::from(dir)));
        }
        dirs::data_dir().map(|d| Cache::new(d.join("knutson")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached table, or `None` if absent, stale or corrupt.
    pub fn load(&self, key: &str) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.version != FORMAT_VERSION || entry.key != key || entry.checksum != checksum(&entry.payload) {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    pub fn store(&self, key: &str, table: &CharacterTable) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_string(table)?;
        let entry = CacheEntry {
            version: FORMAT_VERSION.to_string(),
            key: key.to_string(),
            checksum: checksum(&payload),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use knutson::sl2tables::{sl2_table, Sl2Param};
    use knutson::symchar::an_table;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        for (key, table) in [("an-6", an_table(6).unwrap()), ("sl2-7", sl2_table(&Sl2Param::new(7).unwrap()).unwrap())]
        {
            assert!(cache.load(key).is_none());
            cache.store(key, &table).unwrap();
            let back = cache.load(key).unwrap();
            back.validate().unwrap();
            assert_eq!(back, table);
        }
        let path = cache.path("an-6");
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\\\"order\\\":360"));
        fs::write(&path, text.replacen("\\\"order\\\":360", "\\\"order\\\":361", 1)).unwrap();
        assert!(cache.load("an-6").is_none());
        let mut entry: CacheEntry = serde_json::from_str(&fs::read_to_string(cache.path("sl2-7")).unwrap()).unwrap();
        entry.version = "0".into();
        fs::write(cache.path("sl2-7"), serde_json::to_string(&entry).unwrap()).unwrap();
        assert!(cache.load("sl2-7").is_none());
    }
}
