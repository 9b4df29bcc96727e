//! Content-addressed on-disk cache of JSON values.
//!
//! Each entry is `<sha256 of the key>.json` holding the key, the payload and a
//! checksum of the payload. Unreadable, mismatched or edited entries count as
//! corrupt: they are ignored and overwritten with the recomputed value.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: &str = "gqg-cache/1";

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub corrupt: usize,
    pub writes: usize,
}

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    writable: bool,
    pub stats: CacheStats,
    pub warnings: Vec<String>,
}

fn digest(s: &str) -> String {
    let mut h = Sha256::new();
    h.update(s.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn open(dir: &Path) -> Self {
        let mut c = Cache {
            dir: Some(dir.to_path_buf()),
            writable: true,
            ..Default::default()
        };
        if let Err(e) = std::fs::create_dir_all(dir) {
            c.warn(format!(
                "cache directory {} unusable ({e}); caching disabled",
                dir.display()
            ));
            c.dir = None;
        }
        c
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn warn(&mut self, w: String) {
        eprintln!("warning: {w}");
        self.warnings.push(w);
    }

    fn path_for(&self, key: &Value) -> Option<(PathBuf, String)> {
        let canonical =
            serde_json::to_string(&json!([CACHE_VERSION, key])).expect("keys serialize");
        let d = digest(&canonical);
        self.dir
            .as_ref()
            .map(|dir| (dir.join(format!("{d}.json")), canonical))
    }

    /// The stored payload for `key`, if present and intact.
    pub fn get<T: DeserializeOwned>(&mut self, key: &Value) -> Option<T> {
        let (path, canonical) = self.path_for(key)?;
        let Ok(text) = std::fs::read_to_string(&path) else {
            self.stats.misses += 1;
            return None;
        };
        let entry = serde_json::from_str::<Value>(&text).ok().and_then(|v| {
            let payload = v.get("payload")?;
            let sum = v.get("sha256")?.as_str()?;
            let ok = v.get("key")?.as_str()? == canonical && digest(&payload.to_string()) == sum;
            ok.then(|| serde_json::from_value::<T>(payload.clone()).ok())
                .flatten()
        });
        match entry {
            Some(t) => {
                self.stats.hits += 1;
                Some(t)
            }
            None => {
                self.stats.corrupt += 1;
                self.stats.misses += 1;
                None
            }
        }
    }

    /// Counts a hit that the caller could not use as a corrupt entry.
    pub fn reject_hit(&mut self) {
        self.stats.hits -= 1;
        self.stats.corrupt += 1;
        self.stats.misses += 1;
    }

    pub fn put<T: Serialize>(&mut self, key: &Value, value: &T) {
        if !self.writable {
            return;
        }
        let Some((path, canonical)) = self.path_for(key) else {
            return;
        };
        let payload = serde_json::to_value(value).expect("cache payloads serialize");
        let entry =
            json!({ "key": canonical, "sha256": digest(&payload.to_string()), "payload": payload });
        let tmp = path.with_extension("json.tmp");
        let res =
            std::fs::write(&tmp, entry.to_string()).and_then(|_| std::fs::rename(&tmp, &path));
        match res {
            Ok(()) => self.stats.writes += 1,
            Err(e) => {
                let _ = std::fs::remove_file(&tmp);
                self.writable = false;
                self.warn(format!(
                    "cannot write cache entry {} ({e}); continuing without writing",
                    path.display()
                ));
            }
        }
    }
}
