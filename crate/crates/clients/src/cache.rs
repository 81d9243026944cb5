use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable that overrides the cache location.
pub const CACHE_DIR_ENV: &str = "PCLOUD_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CachedResponse {
    pub url: String,
    pub retrieved_at: DateTime<Utc>,
    pub body: String,
}

/// One JSON file per request URL, named by the SHA-256 of the URL.
#[derive(Debug, Clone)]
pub struct ResponseCache {
    dir: PathBuf,
}

impl ResponseCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$PCLOUD_CACHE_DIR`, else `$XDG_CACHE_HOME/pcloud`, else
    /// `$HOME/.cache/pcloud`, else `./.pcloud-cache`.
    pub fn default_dir() -> PathBuf {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return dir.into();
        }
        if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME") {
            return Path::new(&xdg).join("pcloud");
        }
        if let Some(home) = std::env::var_os("HOME") {
            return Path::new(&home).join(".cache").join("pcloud");
        }
        PathBuf::from(".pcloud-cache")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(url: &str) -> String {
        hex::encode(Sha256::digest(url.as_bytes()))
    }

    pub fn path_for(&self, url: &str) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(url)))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, url: &str) -> Option<CachedResponse> {
        let bytes = fs::read(self.path_for(url)).ok()?;
        let entry: CachedResponse = serde_json::from_slice(&bytes).ok()?;
        (entry.url == url).then_some(entry)
    }

    pub fn put(&self, url: &str, body: &str, retrieved_at: DateTime<Utc>) -> io::Result<CachedResponse> {
        let entry = CachedResponse {
            url: url.to_owned(),
            retrieved_at,
            body: body.to_owned(),
        };
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec_pretty(&entry)?)?;
        tmp.persist(self.path_for(url)).map_err(|e| e.error)?;
        Ok(entry)
    }
}
