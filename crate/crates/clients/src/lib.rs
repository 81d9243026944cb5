//! Fetching reviewers' earlier publications from DBLP and Semantic Scholar.
//!
//! Requests go through an injected [`Transport`], responses are cached on
//! disk per URL, and [`FetchMode::Offline`] serves from that cache alone.

mod cache;
mod client;
pub mod dblp;
pub mod semantic_scholar;
pub mod testing;
mod transport;

pub use cache::{CachedResponse, ResponseCache, CACHE_DIR_ENV};
pub use client::{FetchError, FetchMode, FetchResult, HydrateError, Hydrated, IndexClient, Provider, MAX_LIMIT};
pub use transport::{HttpResponse, RetryPolicy, Sleeper, ThreadSleeper, Transport, TransportError, UreqTransport};
