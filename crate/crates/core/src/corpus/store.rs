use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{
    Assignment, Conference, CorpusError, Paper, Reviewer, ASSIGNMENTS_FILE, CONFERENCE_FILE, PAPERS_FILE,
    REVIEWERS_FILE,
};

#[derive(Deserialize)]
struct ConferenceFile {
    name: String,
    #[serde(default)]
    topics: Vec<String>,
}

#[derive(Debug)]
pub struct LoadedCorpus {
    pub conference: Conference,
    pub warnings: Vec<String>,
}

fn read_json<T: DeserializeOwned>(dir: &Path, file: &str) -> Result<T, CorpusError> {
    let path = dir.join(file);
    let bytes = fs::read(&path).map_err(|source| CorpusError::Io { path, source })?;
    serde_json::from_slice(&bytes).map_err(|e| CorpusError::Parse {
        file: file.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Loads and validates `conference.json`, `papers.json`, `reviewers.json`
/// and the optional `assignments.json` from `dir`.
pub fn load_corpus(dir: impl AsRef<Path>) -> Result<LoadedCorpus, CorpusError> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(CorpusError::Io {
            path: dir.to_owned(),
            source: io::Error::new(io::ErrorKind::NotFound, "corpus directory not found"),
        });
    }
    let meta: ConferenceFile = read_json(dir, CONFERENCE_FILE)?;
    let papers: Vec<Paper> = read_json(dir, PAPERS_FILE)?;
    let reviewers: Vec<Reviewer> = read_json(dir, REVIEWERS_FILE)?;
    let assignments: Vec<Assignment> = if dir.join(ASSIGNMENTS_FILE).exists() {
        read_json(dir, ASSIGNMENTS_FILE)?
    } else {
        Vec::new()
    };
    let (conference, warnings) = Conference::new(meta.name, meta.topics, papers, reviewers, assignments)?;
    Ok(LoadedCorpus { conference, warnings })
}

/// Serializes `value` to `dir/file` through a temporary file in the same
/// directory followed by a rename, so readers never see a partial file.
fn write_json_atomic<T: Serialize + ?Sized>(dir: &Path, file: &str, value: &T) -> Result<(), CorpusError> {
    let target = dir.join(file);
    let io_err = |source| CorpusError::Io {
        path: target.clone(),
        source,
    };
    let mut json = serde_json::to_vec_pretty(value).map_err(|e| io_err(e.into()))?;
    json.push(b'\n');
    let mut tmp = tempfile::Builder::new()
        .prefix(&format!(".{file}."))
        .tempfile_in(dir)
        .map_err(io_err)?;
    tmp.write_all(&json).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(&target).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn save_assignments(conference: &Conference, dir: impl AsRef<Path>) -> Result<(), CorpusError> {
    write_json_atomic(dir.as_ref(), ASSIGNMENTS_FILE, conference.assignments())
}

pub fn save_reviewers(conference: &Conference, dir: impl AsRef<Path>) -> Result<(), CorpusError> {
    write_json_atomic(dir.as_ref(), REVIEWERS_FILE, conference.reviewers())
}
