//! Turning free-style titles and abstracts into term weights.
//!
//! The pipeline is `tokenize` → `remove_stopwords` → `count_terms`, with
//! `build_corpus_weights` running it over a document collection.

mod stopwords;
mod tokenize;
mod weights;

pub use stopwords::{remove_stopwords, StopwordList};
pub use tokenize::{tokenize, Token};
pub(crate) use weights::null_as_empty;
pub use weights::{build_corpus_weights, count_terms, top_terms, DocumentSource, RawDocument, TermWeights};
