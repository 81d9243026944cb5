//! Semantic Scholar Graph API, author-papers endpoint.

use serde::Deserialize;
use url::Url;

use pcloud_core::text::{DocumentSource, RawDocument};

pub const API_BASE: &str = "https://api.semanticscholar.org/graph/v1";

pub fn author_papers_url(author_id: &str, limit: u32) -> String {
    let mut url = Url::parse(API_BASE).expect("static url");
    url.path_segments_mut()
        .expect("base has a path")
        .extend(["author", author_id, "papers"]);
    url.set_query(Some(&format!("fields=title,abstract&limit={limit}")));
    url.into()
}

#[derive(Deserialize)]
struct Page {
    data: Vec<PaperItem>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct PaperItem {
    paper_id: Option<String>,
    title: Option<String>,
    #[serde(rename = "abstract")]
    abstract_text: Option<String>,
}

/// Null abstracts become empty strings; entries without a title are dropped.
pub fn parse_papers(body: &str) -> Result<Vec<RawDocument>, String> {
    let page: Page = serde_json::from_str(body).map_err(|e| e.to_string())?;
    Ok(page
        .data
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let title = p.title?.trim().to_owned();
            if title.is_empty() {
                return None;
            }
            let id = p
                .paper_id
                .filter(|id| !id.is_empty())
                .unwrap_or_else(|| format!("item-{i}"));
            Some(RawDocument::new(
                format!("s2:{id}"),
                title,
                p.abstract_text.unwrap_or_default(),
                DocumentSource::Publication,
            ))
        })
        .collect())
}
