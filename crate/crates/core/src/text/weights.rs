use std::collections::btree_map::{self, BTreeMap};

use serde::{Deserialize, Serialize};

use super::{remove_stopwords, tokenize, StopwordList, Token};
use crate::error::ParamError;
use crate::scalar::{total_cmp, Scalar};

/// Where a document came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DocumentSource {
    Submission,
    Publication,
}

/// One title + abstract unit: a submitted paper or a reviewer's publication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract", default, deserialize_with = "null_as_empty")]
    pub abstract_text: String,
    #[serde(skip_serializing, default = "publication")]
    pub source: DocumentSource,
}

fn publication() -> DocumentSource {
    DocumentSource::Publication
}

pub(crate) fn null_as_empty<'de, D>(de: D) -> Result<String, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Ok(Option::<String>::deserialize(de)?.unwrap_or_default())
}

impl RawDocument {
    pub fn new(
        id: impl Into<String>,
        title: impl Into<String>,
        abstract_text: impl Into<String>,
        source: DocumentSource,
    ) -> Self {
        Self {
            id: id.into(),
            title: title.into(),
            abstract_text: abstract_text.into(),
            source,
        }
    }
}

/// Positive weight per term, kept in term order so iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Scalar")]
pub struct TermWeights<T> {
    entries: BTreeMap<String, T>,
}

impl<T> Default for TermWeights<T> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> TermWeights<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds weights from explicit pairs; repeated terms are summed.
    pub fn from_pairs<S, I>(pairs: I) -> Result<Self, ParamError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, T)>,
    {
        let mut out = Self::new();
        for (term, weight) in pairs {
            let term = term.into();
            if term.is_empty() {
                return Err(ParamError::new("term", "empty term"));
            }
            if !(weight.is_finite() && weight > T::zero()) {
                return Err(ParamError::new(
                    "weight",
                    format!("weight of `{term}` must be positive and finite, got {weight}"),
                ));
            }
            out.add(term, weight);
        }
        Ok(out)
    }

    /// Adds `weight` to `term`. Callers guarantee `weight > 0`.
    pub(crate) fn add(&mut self, term: impl Into<String>, weight: T) {
        debug_assert!(weight > T::zero());
        let slot = self.entries.entry(term.into()).or_insert_with(T::zero);
        *slot = *slot + weight;
    }

    /// Term-wise sum.
    pub fn merge(&mut self, other: &Self) {
        for (term, &w) in &other.entries {
            self.add(term.as_str(), w);
        }
    }

    /// Every weight multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Result<Self, ParamError> {
        if !(factor.is_finite() && factor > T::zero()) {
            return Err(ParamError::new("factor", "must be positive and finite"));
        }
        Ok(Self {
            entries: self.entries.iter().map(|(k, &w)| (k.clone(), w * factor)).collect(),
        })
    }

    pub fn get(&self, term: &str) -> Option<T> {
        self.entries.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> T {
        self.entries.values().fold(T::zero(), |acc, &w| acc + w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> + '_ {
        self.entries.iter().map(|(k, &w)| (k.as_str(), w))
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }

    pub(crate) fn raw_iter(&self) -> btree_map::Iter<'_, String, T> {
        self.entries.iter()
    }
}

/// Occurrence count per distinct token.
pub fn count_terms<T: Scalar>(tokens: &[Token]) -> TermWeights<T> {
    let mut out = TermWeights::new();
    for t in tokens {
        out.add(t.as_str(), T::one());
    }
    out
}

fn filtered(text: &str, stopwords: &StopwordList) -> Vec<Token> {
    remove_stopwords(tokenize(text), stopwords)
}

/// Aggregated weights over a document collection, with title occurrences
/// counted `title_boost` times.
pub fn build_corpus_weights<'a, T, I>(
    docs: I,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, ParamError>
where
    T: Scalar,
    I: IntoIterator<Item = &'a RawDocument>,
{
    if !(title_boost.is_finite() && title_boost > T::zero()) {
        return Err(ParamError::new(
            "titleBoost",
            format!("must be positive and finite, got {title_boost}"),
        ));
    }
    let mut out = TermWeights::new();
    for doc in docs {
        for t in filtered(&doc.title, stopwords) {
            out.add(t.into_string(), title_boost);
        }
        for t in filtered(&doc.abstract_text, stopwords) {
            out.add(t.into_string(), T::one());
        }
    }
    Ok(out)
}

/// The `n` heaviest terms, heaviest first, ties by term byte order.
pub fn top_terms<T: Scalar>(weights: &TermWeights<T>, n: usize) -> Vec<(String, T)> {
    let mut all: Vec<(String, T)> = weights.iter().map(|(k, w)| (k.to_owned(), w)).collect();
    all.sort_by(|a, b| total_cmp(b.1, a.1).then_with(|| a.0.as_bytes().cmp(b.0.as_bytes())));
    all.truncate(n);
    all
}
