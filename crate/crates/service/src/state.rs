use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use pcloud_core::corpus::{load_corpus, save_assignments, Conference, CorpusError};
use pcloud_core::text::StopwordList;
use pcloud_core::{CloudConfig, GapThresholds};
use tokio::sync::Mutex;

use crate::error::ApiError;

/// Defaults applied when a request does not override them.
#[derive(Debug, Clone)]
pub struct Settings {
    pub cloud: CloudConfig,
    pub thresholds: GapThresholds,
    pub title_boost: f64,
    pub stopwords: StopwordList,
    pub default_k: usize,
    /// Allowed browser origin; `None` allows any.
    pub cors_origin: Option<String>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            cloud: CloudConfig::default(),
            thresholds: GapThresholds::default(),
            title_boost: 1.0,
            stopwords: StopwordList::english(),
            default_k: 10,
            cors_origin: None,
        }
    }
}

struct Inner {
    snapshot: RwLock<Arc<Conference>>,
    writer: Mutex<()>,
    corpus_dir: PathBuf,
    settings: Settings,
}

/// Shared server state. Cloning is cheap.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

impl AppState {
    pub fn new(conference: Conference, corpus_dir: impl Into<PathBuf>, settings: Settings) -> Self {
        Self {
            inner: Arc::new(Inner {
                snapshot: RwLock::new(Arc::new(conference)),
                writer: Mutex::new(()),
                corpus_dir: corpus_dir.into(),
                settings,
            }),
        }
    }

    /// Loads the corpus in `dir`; returns the state and load warnings.
    pub fn load(dir: impl AsRef<Path>, settings: Settings) -> Result<(Self, Vec<String>), CorpusError> {
        let dir = dir.as_ref();
        let loaded = load_corpus(dir)?;
        Ok((Self::new(loaded.conference, dir, settings), loaded.warnings))
    }

    pub fn snapshot(&self) -> Arc<Conference> {
        self.inner.snapshot.read().expect("snapshot lock poisoned").clone()
    }

    pub fn settings(&self) -> &Settings {
        &self.inner.settings
    }

    pub fn corpus_dir(&self) -> &Path {
        &self.inner.corpus_dir
    }

    /// Applies `edit` to a copy of the current conference, writes the
    /// assignments to disk and publishes the copy. Nothing changes when the
    /// edit or the write fails.
    pub async fn mutate<R, F>(&self, edit: F) -> Result<R, ApiError>
    where
        F: FnOnce(&mut Conference) -> Result<R, ApiError>,
    {
        let _guard = self.inner.writer.lock().await;
        let mut next = (*self.snapshot()).clone();
        let out = edit(&mut next)?;
        let next = Arc::new(next);
        let to_save = next.clone();
        let dir = self.inner.corpus_dir.clone();
        tokio::task::spawn_blocking(move || save_assignments(&to_save, dir))
            .await
            .map_err(|e| ApiError::internal(format!("persistence task failed: {e}")))?
            .map_err(|e| ApiError::internal(format!("could not persist assignments: {e}")))?;
        *self.inner.snapshot.write().expect("snapshot lock poisoned") = next;
        Ok(out)
    }
}
