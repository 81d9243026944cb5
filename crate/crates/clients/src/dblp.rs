//! DBLP publication search (`/search/publ/api`, JSON format).
//!
//! DBLP serves titles but no abstracts, so every document it yields has an
//! empty abstract.

use serde_json::Value;
use url::Url;

use pcloud_core::text::{DocumentSource, RawDocument};

pub const ENDPOINT: &str = "https://dblp.org/search/publ/api";

pub fn search_url(query: &str, limit: u32) -> String {
    let mut url = Url::parse(ENDPOINT).expect("static url");
    url.query_pairs_mut()
        .append_pair("q", query)
        .append_pair("format", "json")
        .append_pair("h", &limit.to_string());
    url.into()
}

/// Extracts one document per hit. Hits without a title are dropped.
pub fn parse_hits(body: &str) -> Result<Vec<RawDocument>, String> {
    let root: Value = serde_json::from_str(body).map_err(|e| e.to_string())?;
    let hits = root
        .get("result")
        .and_then(|r| r.get("hits"))
        .ok_or("missing `result.hits`")?;
    let hit = match hits.get("hit") {
        None | Some(Value::Null) => return Ok(Vec::new()),
        Some(Value::Array(items)) => items.clone(),
        // a lone hit is occasionally serialized as an object
        Some(obj @ Value::Object(_)) => vec![obj.clone()],
        Some(_) => return Err("`result.hits.hit` is neither a list nor an object".into()),
    };
    let mut docs = Vec::with_capacity(hit.len());
    for (i, h) in hit.iter().enumerate() {
        let info = h.get("info").ok_or_else(|| format!("hit {i} has no `info`"))?;
        let Some(title) = info.get("title").and_then(Value::as_str).map(str::trim) else {
            continue;
        };
        if title.is_empty() {
            continue;
        }
        let key = info
            .get("key")
            .and_then(Value::as_str)
            .or_else(|| h.get("@id").and_then(Value::as_str))
            .map(str::to_owned)
            .unwrap_or_else(|| format!("hit-{i}"));
        docs.push(RawDocument::new(
            format!("dblp:{key}"),
            title,
            "",
            DocumentSource::Publication,
        ));
    }
    Ok(docs)
}
