use std::collections::BTreeSet;
use std::io;
use std::path::Path;

use super::Token;

const BUNDLED_ENGLISH: &str = include_str!("stopwords_en.txt");

/// Set of lowercase words excluded from term weighting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl StopwordList {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse(BUNDLED_ENGLISH)
    }

    /// Parses the line-oriented stopword format: one word per line, blank
    /// lines and `#` comments skipped, entries trimmed and lowercased.
    pub fn parse(text: &str) -> Self {
        text.lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .collect()
    }

    pub fn load(path: impl AsRef<Path>) -> io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

impl<S: AsRef<str>> FromIterator<S> for StopwordList {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let words = iter
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        Self { words }
    }
}

/// Keeps the tokens that are not stopwords, in their original order.
pub fn remove_stopwords(tokens: Vec<Token>, stopwords: &StopwordList) -> Vec<Token> {
    tokens.into_iter().filter(|t| !stopwords.contains(t.as_str())).collect()
}
