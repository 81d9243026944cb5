use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use pcloud_core::corpus::Reviewer;
use pcloud_core::text::RawDocument;

use crate::cache::ResponseCache;
use crate::transport::{RateLimiter, RetryPolicy, Sleeper, ThreadSleeper, Transport};
use crate::{dblp, semantic_scholar};

/// Largest page size either provider accepts.
pub const MAX_LIMIT: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provider {
    Dblp,
    SemanticScholar,
}

impl fmt::Display for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provider::Dblp => "dblp",
            Provider::SemanticScholar => "semantic-scholar",
        })
    }
}

impl FromStr for Provider {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dblp" => Ok(Provider::Dblp),
            "semantic-scholar" | "semanticscholar" | "s2" => Ok(Provider::SemanticScholar),
            _ => Err(format!("unknown source `{s}` (expected `dblp` or `semantic-scholar`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchMode {
    Online,
    /// Serve from the cache only; a miss is an error and nothing is sent.
    Offline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FetchResult {
    pub documents: Vec<RawDocument>,
    pub provider: Provider,
    pub from_cache: bool,
    pub retrieved_at: DateTime<Utc>,
}

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("invalid request: {0}")]
    InvalidArgument(String),
    #[error("{provider}: offline and no cached response for {url}")]
    CacheMiss { provider: Provider, url: String },
    #[error("{provider}: unexpected HTTP status {status}")]
    Provider { provider: Provider, status: u16 },
    #[error("{provider}: still rate limited after {attempts} attempts")]
    RateLimited { provider: Provider, attempts: u32 },
    #[error("{provider}: `{id}` not found")]
    NotFound { provider: Provider, id: String },
    #[error("{provider}: malformed payload: {message}")]
    Parse { provider: Provider, message: String },
    #[error("{provider}: {message}")]
    Network { provider: Provider, message: String },
    #[error("response cache: {0}")]
    Cache(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum HydrateError {
    #[error("reviewer `{reviewer_id}` has no external id for {wanted}")]
    NoExternalId { reviewer_id: String, wanted: String },
    #[error("reviewer `{reviewer_id}`: {source}")]
    Fetch {
        reviewer_id: String,
        #[source]
        source: FetchError,
    },
}

/// Outcome of one reviewer hydration.
#[derive(Debug, Clone)]
pub struct Hydrated {
    pub reviewer: Reviewer,
    pub fetches: Vec<FetchResult>,
    /// Publications added on top of what the reviewer already had.
    pub added: usize,
}

type Parser = fn(&str) -> Result<Vec<RawDocument>, String>;

/// Client for both bibliographic providers. Safe to share across threads;
/// dispatch is rate limited per provider.
pub struct IndexClient {
    transport: Arc<dyn Transport>,
    sleeper: Arc<dyn Sleeper>,
    cache: ResponseCache,
    retry: RetryPolicy,
    dblp_limiter: RateLimiter,
    s2_limiter: RateLimiter,
}

impl IndexClient {
    /// One request per second per provider, default retry policy.
    pub fn new(transport: Arc<dyn Transport>, cache: ResponseCache) -> Self {
        Self {
            transport,
            sleeper: Arc::new(ThreadSleeper),
            cache,
            retry: RetryPolicy::default(),
            dblp_limiter: RateLimiter::new(Duration::from_secs(1)),
            s2_limiter: RateLimiter::new(Duration::from_secs(1)),
        }
    }

    pub fn with_sleeper(mut self, sleeper: Arc<dyn Sleeper>) -> Self {
        self.sleeper = sleeper;
        self
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    pub fn with_min_interval(mut self, interval: Duration) -> Self {
        self.dblp_limiter = RateLimiter::new(interval);
        self.s2_limiter = RateLimiter::new(interval);
        self
    }

    pub fn cache(&self) -> &ResponseCache {
        &self.cache
    }

    pub fn fetch_dblp(&self, query: &str, limit: u32, mode: FetchMode) -> Result<FetchResult, FetchError> {
        let query = query.trim();
        check_request(query, limit)?;
        self.fetch(
            Provider::Dblp,
            &dblp::search_url(query, limit),
            query,
            mode,
            dblp::parse_hits,
        )
    }

    pub fn fetch_semantic_scholar(
        &self,
        author_id: &str,
        limit: u32,
        mode: FetchMode,
    ) -> Result<FetchResult, FetchError> {
        let author_id = author_id.trim();
        check_request(author_id, limit)?;
        self.fetch(
            Provider::SemanticScholar,
            &semantic_scholar::author_papers_url(author_id, limit),
            author_id,
            mode,
            semantic_scholar::parse_papers,
        )
    }

    fn fetch(
        &self,
        provider: Provider,
        url: &str,
        subject: &str,
        mode: FetchMode,
        parse: Parser,
    ) -> Result<FetchResult, FetchError> {
        let parse = |body: &str| {
            parse(body)
                .map(unique_ids)
                .map_err(|message| FetchError::Parse { provider, message })
        };

        if let Some(hit) = self.cache.get(url) {
            log::debug!("{provider}: cache hit for {url}");
            return Ok(FetchResult {
                documents: parse(&hit.body)?,
                provider,
                from_cache: true,
                retrieved_at: hit.retrieved_at,
            });
        }
        if mode == FetchMode::Offline {
            return Err(FetchError::CacheMiss {
                provider,
                url: url.to_owned(),
            });
        }

        let limiter = match provider {
            Provider::Dblp => &self.dblp_limiter,
            Provider::SemanticScholar => &self.s2_limiter,
        };
        let mut attempt = 0;
        let body = loop {
            attempt += 1;
            limiter.acquire(self.sleeper.as_ref());
            log::info!("{provider}: GET {url} (attempt {attempt})");
            let resp = self
                .transport
                .get(url)
                .map_err(|e| FetchError::Network { provider, message: e.0 })?;
            match resp.status {
                200 => break resp.body,
                429 if attempt < self.retry.max_attempts => {
                    self.sleeper.sleep(self.retry.delay_after(attempt));
                }
                429 => {
                    return Err(FetchError::RateLimited {
                        provider,
                        attempts: attempt,
                    })
                }
                404 if provider == Provider::SemanticScholar => {
                    return Err(FetchError::NotFound {
                        provider,
                        id: subject.to_owned(),
                    })
                }
                status => return Err(FetchError::Provider { provider, status }),
            }
        };
        let documents = parse(&body)?;
        let entry = self.cache.put(url, &body, Utc::now())?;
        Ok(FetchResult {
            documents,
            provider,
            from_cache: false,
            retrieved_at: entry.retrieved_at,
        })
    }

    /// Fetches publications for every provider in `preference` the reviewer
    /// has an id for and merges them after the existing ones, dropping
    /// titles already present (case-insensitive).
    pub fn hydrate_reviewer(
        &self,
        reviewer: &Reviewer,
        preference: &[Provider],
        limit: u32,
        mode: FetchMode,
    ) -> Result<Hydrated, HydrateError> {
        let ids = &reviewer.external_ids;
        let plan: Vec<(Provider, &str)> = preference
            .iter()
            .filter_map(|&p| match p {
                Provider::Dblp => ids.dblp_query.as_deref().map(|q| (p, q)),
                Provider::SemanticScholar => ids.semantic_scholar_author_id.as_deref().map(|a| (p, a)),
            })
            .filter(|(_, id)| !id.trim().is_empty())
            .collect();
        if plan.is_empty() {
            return Err(HydrateError::NoExternalId {
                reviewer_id: reviewer.id.clone(),
                wanted: preference
                    .iter()
                    .map(Provider::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
            });
        }

        let mut fetches = Vec::with_capacity(plan.len());
        for (provider, id) in plan {
            let result = match provider {
                Provider::Dblp => self.fetch_dblp(id, limit, mode),
                Provider::SemanticScholar => self.fetch_semantic_scholar(id, limit, mode),
            }
            .map_err(|source| HydrateError::Fetch {
                reviewer_id: reviewer.id.clone(),
                source,
            })?;
            fetches.push(result);
        }

        let mut merged = Vec::new();
        let mut titles = HashSet::new();
        let mut doc_ids = HashSet::new();
        let existing = reviewer.publications.len();
        for doc in reviewer
            .publications
            .iter()
            .chain(fetches.iter().flat_map(|f| &f.documents))
        {
            if titles.insert(title_key(&doc.title)) && doc_ids.insert(doc.id.clone()) {
                merged.push(doc.clone());
            }
        }
        let added = merged.len().saturating_sub(existing);
        let mut reviewer = reviewer.clone();
        reviewer.publications = merged;
        Ok(Hydrated {
            reviewer,
            fetches,
            added,
        })
    }
}

fn title_key(title: &str) -> String {
    title.trim().to_lowercase()
}

fn unique_ids(docs: Vec<RawDocument>) -> Vec<RawDocument> {
    let mut seen = HashSet::new();
    docs.into_iter().filter(|d| seen.insert(d.id.clone())).collect()
}

fn check_request(subject: &str, limit: u32) -> Result<(), FetchError> {
    if subject.is_empty() {
        return Err(FetchError::InvalidArgument("empty query".into()));
    }
    if limit == 0 || limit > MAX_LIMIT {
        return Err(FetchError::InvalidArgument(format!(
            "limit must lie in 1..={MAX_LIMIT}, got {limit}"
        )));
    }
    Ok(())
}
