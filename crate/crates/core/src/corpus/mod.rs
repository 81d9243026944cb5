//! The conference corpus: papers, reviewers and the chair's assignments.

mod store;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{null_as_empty, DocumentSource, RawDocument};

pub use store::{load_corpus, save_assignments, save_reviewers, LoadedCorpus};

pub const CONFERENCE_FILE: &str = "conference.json";
pub const PAPERS_FILE: &str = "papers.json";
pub const REVIEWERS_FILE: &str = "reviewers.json";
pub const ASSIGNMENTS_FILE: &str = "assignments.json";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{file}: {message}")]
    Validation {
        file: String,
        /// Offending id or name.
        entity: String,
        message: String,
    },
}

impl CorpusError {
    fn invalid(file: &str, entity: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Validation {
            file: file.to_owned(),
            entity: entity.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Paper {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract", default, deserialize_with = "null_as_empty")]
    pub abstract_text: String,
    #[serde(default)]
    pub topics: Vec<String>,
    #[serde(default)]
    pub author_names: Vec<String>,
}

impl Paper {
    pub fn as_document(&self) -> RawDocument {
        RawDocument::new(
            self.id.clone(),
            self.title.clone(),
            self.abstract_text.clone(),
            DocumentSource::Submission,
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExternalIds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dblp_query: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantic_scholar_author_id: Option<String>,
}

impl ExternalIds {
    pub fn is_empty(&self) -> bool {
        self.dblp_query.is_none() && self.semantic_scholar_author_id.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Reviewer {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affiliation: Option<String>,
    #[serde(default, skip_serializing_if = "ExternalIds::is_empty")]
    pub external_ids: ExternalIds,
    #[serde(default)]
    pub publications: Vec<RawDocument>,
    #[serde(default)]
    pub accepted_topics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignmentStatus {
    Proposed,
    Confirmed,
    Declined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignmentOrigin {
    Manual,
    Suggested,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Assignment {
    pub paper_id: String,
    pub reviewer_id: String,
    pub status: AssignmentStatus,
    pub origin: AssignmentOrigin,
}

impl Assignment {
    pub fn new(
        paper_id: impl Into<String>,
        reviewer_id: impl Into<String>,
        status: AssignmentStatus,
        origin: AssignmentOrigin,
    ) -> Self {
        Self {
            paper_id: paper_id.into(),
            reviewer_id: reviewer_id.into(),
            status,
            origin,
        }
    }

    fn key(&self) -> (&str, &str) {
        (&self.paper_id, &self.reviewer_id)
    }
}

/// A validated conference. Every constructor and mutation keeps ids unique
/// and assignment references resolvable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Conference {
    name: String,
    topics: Vec<String>,
    papers: Vec<Paper>,
    reviewers: Vec<Reviewer>,
    assignments: Vec<Assignment>,
}

impl Conference {
    /// Validates the parts and returns the conference plus non-fatal warnings.
    pub fn new(
        name: impl Into<String>,
        topics: Vec<String>,
        papers: Vec<Paper>,
        reviewers: Vec<Reviewer>,
        assignments: Vec<Assignment>,
    ) -> Result<(Self, Vec<String>), CorpusError> {
        let conf = Self {
            name: name.into(),
            topics,
            papers,
            reviewers,
            assignments,
        };
        let warnings = conf.validate()?;
        Ok((conf, warnings))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn topics(&self) -> &[String] {
        &self.topics
    }

    pub fn papers(&self) -> &[Paper] {
        &self.papers
    }

    pub fn reviewers(&self) -> &[Reviewer] {
        &self.reviewers
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn paper(&self, id: &str) -> Option<&Paper> {
        self.papers.iter().find(|p| p.id == id)
    }

    pub fn reviewer(&self, id: &str) -> Option<&Reviewer> {
        self.reviewers.iter().find(|r| r.id == id)
    }

    pub fn assignments_for_paper<'a>(&'a self, paper_id: &'a str) -> impl Iterator<Item = &'a Assignment> + 'a {
        self.assignments.iter().filter(move |a| a.paper_id == paper_id)
    }

    /// Checks every invariant; returns warnings for soft mismatches.
    pub fn validate(&self) -> Result<Vec<String>, CorpusError> {
        let mut warnings = Vec::new();

        let mut topics = HashSet::new();
        for t in &self.topics {
            if !topics.insert(t.as_str()) {
                return Err(CorpusError::invalid(
                    CONFERENCE_FILE,
                    t,
                    format!("duplicate topic `{t}`"),
                ));
            }
        }

        let mut paper_ids = HashSet::new();
        for p in &self.papers {
            if p.id.trim().is_empty() {
                return Err(CorpusError::invalid(PAPERS_FILE, &p.id, "paper with empty id"));
            }
            if !paper_ids.insert(p.id.as_str()) {
                return Err(CorpusError::invalid(
                    PAPERS_FILE,
                    &p.id,
                    format!("duplicate paper id `{}`", p.id),
                ));
            }
            if p.title.trim().is_empty() {
                return Err(CorpusError::invalid(
                    PAPERS_FILE,
                    &p.id,
                    format!("paper `{}` has an empty title", p.id),
                ));
            }
            for t in p.topics.iter().filter(|t| !topics.contains(t.as_str())) {
                warnings.push(format!("paper `{}`: topic `{t}` is not a conference topic", p.id));
            }
        }

        let mut reviewer_ids = HashSet::new();
        let mut reviewer_names: HashMap<String, &str> = HashMap::new();
        for r in &self.reviewers {
            if r.id.trim().is_empty() {
                return Err(CorpusError::invalid(REVIEWERS_FILE, &r.id, "reviewer with empty id"));
            }
            if !reviewer_ids.insert(r.id.as_str()) {
                return Err(CorpusError::invalid(
                    REVIEWERS_FILE,
                    &r.id,
                    format!("duplicate reviewer id `{}`", r.id),
                ));
            }
            if r.name.trim().is_empty() {
                return Err(CorpusError::invalid(
                    REVIEWERS_FILE,
                    &r.id,
                    format!("reviewer `{}` has an empty name", r.id),
                ));
            }
            validate_publications(r)?;
            for t in r.accepted_topics.iter().filter(|t| !topics.contains(t.as_str())) {
                warnings.push(format!("reviewer `{}`: topic `{t}` is not a conference topic", r.id));
            }
            reviewer_names.insert(r.name.trim().to_lowercase(), &r.id);
        }

        for p in &self.papers {
            for author in &p.author_names {
                if let Some(rid) = reviewer_names.get(&author.trim().to_lowercase()) {
                    warnings.push(format!(
                        "paper `{}`: author `{author}` has the same name as reviewer `{rid}`",
                        p.id
                    ));
                }
            }
        }

        let mut pairs = HashSet::new();
        for a in &self.assignments {
            self.check_references(a)?;
            if !pairs.insert(a.key()) {
                return Err(CorpusError::invalid(
                    ASSIGNMENTS_FILE,
                    format!("{}/{}", a.paper_id, a.reviewer_id),
                    format!(
                        "duplicate assignment of reviewer `{}` to paper `{}`",
                        a.reviewer_id, a.paper_id
                    ),
                ));
            }
        }
        Ok(warnings)
    }

    fn check_references(&self, a: &Assignment) -> Result<(), CorpusError> {
        if self.paper(&a.paper_id).is_none() {
            return Err(CorpusError::invalid(
                ASSIGNMENTS_FILE,
                &a.paper_id,
                format!("assignment references unknown paper `{}`", a.paper_id),
            ));
        }
        if self.reviewer(&a.reviewer_id).is_none() {
            return Err(CorpusError::invalid(
                ASSIGNMENTS_FILE,
                &a.reviewer_id,
                format!("assignment references unknown reviewer `{}`", a.reviewer_id),
            ));
        }
        Ok(())
    }

    /// Inserts the assignment, or replaces the one for the same pair.
    pub fn upsert_assignment(&mut self, assignment: Assignment) -> Result<&Assignment, CorpusError> {
        self.check_references(&assignment)?;
        let idx = match self.assignments.iter().position(|a| a.key() == assignment.key()) {
            Some(i) => {
                self.assignments[i] = assignment;
                i
            }
            None => {
                self.assignments.push(assignment);
                self.assignments.len() - 1
            }
        };
        Ok(&self.assignments[idx])
    }

    /// Removes the pair; `None` when it was not assigned.
    pub fn remove_assignment(&mut self, paper_id: &str, reviewer_id: &str) -> Option<Assignment> {
        let idx = self
            .assignments
            .iter()
            .position(|a| a.key() == (paper_id, reviewer_id))?;
        Some(self.assignments.remove(idx))
    }

    /// Replaces a reviewer's publication list.
    pub fn set_publications(&mut self, reviewer_id: &str, publications: Vec<RawDocument>) -> Result<(), CorpusError> {
        let reviewer = self.reviewers.iter_mut().find(|r| r.id == reviewer_id).ok_or_else(|| {
            CorpusError::invalid(REVIEWERS_FILE, reviewer_id, format!("unknown reviewer `{reviewer_id}`"))
        })?;
        let mut updated = reviewer.clone();
        updated.publications = publications;
        validate_publications(&updated)?;
        *reviewer = updated;
        Ok(())
    }

    /// Distinct topic names referenced anywhere, for display.
    pub fn all_topic_names(&self) -> BTreeSet<&str> {
        self.topics
            .iter()
            .chain(self.papers.iter().flat_map(|p| &p.topics))
            .chain(self.reviewers.iter().flat_map(|r| &r.accepted_topics))
            .map(String::as_str)
            .collect()
    }
}

fn validate_publications(r: &Reviewer) -> Result<(), CorpusError> {
    let mut ids = HashSet::new();
    for doc in &r.publications {
        if doc.id.trim().is_empty() {
            return Err(CorpusError::invalid(
                REVIEWERS_FILE,
                &r.id,
                format!("reviewer `{}` has a publication with an empty id", r.id),
            ));
        }
        if !ids.insert(doc.id.as_str()) {
            return Err(CorpusError::invalid(
                REVIEWERS_FILE,
                &doc.id,
                format!("reviewer `{}` lists publication `{}` twice", r.id, doc.id),
            ));
        }
        if doc.title.trim().is_empty() {
            return Err(CorpusError::invalid(
                REVIEWERS_FILE,
                &doc.id,
                format!("publication `{}` of reviewer `{}` has an empty title", doc.id, r.id),
            ));
        }
    }
    Ok(())
}
