use std::fmt;

use serde::{Deserialize, Serialize};

/// A sanitized, lowercase term.
///
/// Holds at least two characters, at least one letter, and only letters,
/// digits, `-` and `'`, never starting or ending with `-` or `'`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Token(String);

impl Token {
    /// Validates `surface` against the token rules. Does not lowercase.
    pub fn new(surface: impl Into<String>) -> Option<Self> {
        let surface = surface.into();
        is_valid_token(&surface).then_some(Self(surface))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_kept_char(c: char) -> bool {
    c.is_alphabetic() || c.is_numeric() || c == '-' || c == '\''
}

fn is_edge_char(c: char) -> bool {
    c == '-' || c == '\''
}

pub(crate) fn is_valid_token(s: &str) -> bool {
    s.chars().count() >= 2
        && s.chars().all(is_kept_char)
        && s.chars().any(char::is_alphabetic)
        && !s.starts_with(is_edge_char)
        && !s.ends_with(is_edge_char)
        && s.to_lowercase() == s
}

/// Splits free text into sanitized tokens, keeping order and duplicates.
///
/// The text is lowercased, every character other than a letter, digit, `-`
/// or `'` becomes a separator, and pieces are trimmed of edge `-`/`'`.
/// Pieces without a letter or shorter than two characters are dropped.
pub fn tokenize(text: &str) -> Vec<Token> {
    let lowered = text.to_lowercase();
    let mut out = Vec::new();
    for piece in lowered.split(|c: char| !is_kept_char(c)) {
        let piece = piece.trim_matches(is_edge_char);
        if piece.chars().count() < 2 || !piece.chars().any(char::is_alphabetic) {
            continue;
        }
        out.push(Token(piece.to_owned()));
    }
    out
}
