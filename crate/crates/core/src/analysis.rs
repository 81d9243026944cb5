//! Weight aggregation per scope, submission-vs-PC coverage gaps, and
//! cosine-based reviewer suggestions.

use std::collections::btree_map::Iter;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Conference, Paper, Reviewer};
use crate::error::ParamError;
use crate::scalar::{total_cmp, Scalar};
use crate::text::{build_corpus_weights, StopwordList, TermWeights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown paper `{0}`")]
    UnknownPaper(String),
    #[error("unknown reviewer `{0}`")]
    UnknownReviewer(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}

pub fn submissions_weights<T: Scalar>(
    conference: &Conference,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, ParamError> {
    let docs: Vec<_> = conference.papers().iter().map(Paper::as_document).collect();
    build_corpus_weights(&docs, stopwords, title_boost)
}

pub fn paper_weights<T: Scalar>(
    paper: &Paper,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, ParamError> {
    build_corpus_weights(&[paper.as_document()], stopwords, title_boost)
}

pub fn reviewer_weights<T: Scalar>(
    reviewer: &Reviewer,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, ParamError> {
    build_corpus_weights(&reviewer.publications, stopwords, title_boost)
}

/// Term-wise sum of every reviewer's weights.
pub fn pc_weights<T: Scalar>(
    conference: &Conference,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, ParamError> {
    let mut total = TermWeights::new();
    for r in conference.reviewers() {
        total.merge(&reviewer_weights(r, stopwords, title_boost)?);
    }
    Ok(total)
}

/// Weights rescaled to shares summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct TermDistribution<T> {
    shares: BTreeMap<String, T>,
}

impl<T: Scalar> TermDistribution<T> {
    pub fn share(&self, term: &str) -> T {
        self.shares.get(term).copied().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }

    pub fn iter(&self) -> Iter<'_, String, T> {
        self.shares.iter()
    }
}

pub fn normalize<T: Scalar>(weights: &TermWeights<T>) -> TermDistribution<T> {
    let total = weights.total();
    TermDistribution {
        shares: weights.iter().map(|(term, w)| (term.to_owned(), w / total)).collect(),
    }
}

/// Share and ratio thresholds for the gap report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct GapThresholds<T> {
    /// Terms below this share of submission mass are not reported.
    pub min_share: T,
    /// Entries whose PC/submission share ratio falls below this are flagged.
    pub ratio: T,
}

impl<T: Scalar> Default for GapThresholds<T> {
    fn default() -> Self {
        Self {
            min_share: T::lit(0.01),
            ratio: T::lit(0.5),
        }
    }
}

impl<T: Scalar> GapThresholds<T> {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.min_share > T::zero() && self.min_share <= T::one()) {
            return Err(ParamError::new(
                "minShare",
                format!("must lie in (0, 1], got {}", self.min_share),
            ));
        }
        if !(self.ratio.is_finite() && self.ratio >= T::zero()) {
            return Err(ParamError::new(
                "ratio",
                format!("must be a nonnegative number, got {}", self.ratio),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct GapEntry<T> {
    pub term: String,
    pub sub_share: T,
    pub pc_share: T,
    pub ratio: T,
    pub flagged: bool,
}

/// Compares submission demand with PC competence term by term. Every term
/// with at least `min_share` of the submission mass gets an entry; it is
/// flagged when the PC covers it less than `ratio` times proportionally.
pub fn coverage_gap_report<T: Scalar>(
    submissions: &TermDistribution<T>,
    pc: &TermDistribution<T>,
    thresholds: GapThresholds<T>,
) -> Result<Vec<GapEntry<T>>, ParamError> {
    thresholds.validate()?;
    let mut entries: Vec<GapEntry<T>> = submissions
        .iter()
        .filter(|(_, &share)| share >= thresholds.min_share)
        .map(|(term, &sub_share)| {
            let pc_share = pc.share(term);
            let ratio = pc_share / sub_share;
            GapEntry {
                term: term.clone(),
                sub_share,
                pc_share,
                ratio,
                flagged: ratio < thresholds.ratio,
            }
        })
        .collect();
    entries.sort_by(|a, b| total_cmp(b.sub_share, a.sub_share).then_with(|| a.term.as_bytes().cmp(b.term.as_bytes())));
    Ok(entries)
}

/// Cosine similarity of two weight vectors, in `[0, 1]`; zero when either
/// side is empty. Exactly symmetric in its arguments.
pub fn match_score<T: Scalar>(paper: &TermWeights<T>, reviewer: &TermWeights<T>) -> T {
    if paper.is_empty() || reviewer.is_empty() {
        return T::zero();
    }
    // merge-join over the two sorted maps so the summation order does not
    // depend on argument order
    let mut dot = T::zero();
    let mut a = paper.raw_iter().peekable();
    let mut b = reviewer.raw_iter().peekable();
    while let (Some((ka, &wa)), Some((kb, &wb))) = (a.peek().copied(), b.peek().copied()) {
        match ka.cmp(kb) {
            std::cmp::Ordering::Less => {
                a.next();
            }
            std::cmp::Ordering::Greater => {
                b.next();
            }
            std::cmp::Ordering::Equal => {
                dot = dot + wa * wb;
                a.next();
                b.next();
            }
        }
    }
    let norm = |w: &TermWeights<T>| w.iter().fold(T::zero(), |acc, (_, x)| acc + x * x).sqrt();
    let denom = norm(paper) * norm(reviewer);
    if denom <= T::zero() {
        return T::zero();
    }
    (dot / denom).max(T::zero()).min(T::one())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound = "T: Scalar")]
pub struct Suggestion<T> {
    pub reviewer_id: String,
    pub score: T,
}

/// Ranks reviewers for a paper by match score, best first, ties by id.
pub fn rank_reviewers<T: Scalar>(
    paper: &TermWeights<T>,
    reviewers: &[(String, TermWeights<T>)],
    k: usize,
) -> Vec<Suggestion<T>> {
    let mut all: Vec<Suggestion<T>> = reviewers
        .iter()
        .map(|(id, w)| Suggestion {
            reviewer_id: id.clone(),
            score: match_score(paper, w),
        })
        .collect();
    all.sort_by(|a, b| {
        total_cmp(b.score, a.score).then_with(|| a.reviewer_id.as_bytes().cmp(b.reviewer_id.as_bytes()))
    });
    all.truncate(k);
    all
}

pub fn suggest_reviewers<T: Scalar>(
    conference: &Conference,
    paper_id: &str,
    k: usize,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<Vec<Suggestion<T>>, AnalysisError> {
    let paper = conference
        .paper(paper_id)
        .ok_or_else(|| AnalysisError::UnknownPaper(paper_id.to_owned()))?;
    let target = paper_weights(paper, stopwords, title_boost)?;
    let reviewers = conference
        .reviewers()
        .iter()
        .map(|r| Ok((r.id.clone(), reviewer_weights(r, stopwords, title_boost)?)))
        .collect::<Result<Vec<_>, ParamError>>()?;
    Ok(rank_reviewers(&target, &reviewers, k))
}

/// A suggestion as emitted over the wire: score rounded to six decimals and
/// marked when the reviewer already holds an assignment for the paper.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuggestionRow {
    pub reviewer_id: String,
    pub score: f64,
    pub assigned: bool,
}

pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

pub fn suggestion_rows(
    conference: &Conference,
    paper_id: &str,
    k: usize,
    stopwords: &StopwordList,
    title_boost: f64,
) -> Result<Vec<SuggestionRow>, AnalysisError> {
    let suggestions = suggest_reviewers(conference, paper_id, k, stopwords, title_boost)?;
    Ok(suggestions
        .into_iter()
        .map(|s| SuggestionRow {
            assigned: conference
                .assignments_for_paper(paper_id)
                .any(|a| a.reviewer_id == s.reviewer_id),
            reviewer_id: s.reviewer_id,
            score: round6(s.score),
        })
        .collect())
}

/// Gap report for a whole conference.
pub fn conference_gap_report<T: Scalar>(
    conference: &Conference,
    stopwords: &StopwordList,
    title_boost: T,
    thresholds: GapThresholds<T>,
) -> Result<Vec<GapEntry<T>>, ParamError> {
    let sub = normalize(&submissions_weights(conference, stopwords, title_boost)?);
    let pc = normalize(&pc_weights(conference, stopwords, title_boost)?);
    coverage_gap_report(&sub, &pc, thresholds)
}
