//! Clouds for a named scope of the corpus, shared by the CLI and service so
//! both produce the same bytes for the same request.

use std::fmt;
use std::str::FromStr;

use crate::analysis::{pc_weights, reviewer_weights, submissions_weights, AnalysisError};
use crate::corpus::Conference;
use crate::error::ParamError;
use crate::layout::{place_words, CloudConfig, CloudLayout};
use crate::scalar::Scalar;
use crate::svg::render_svg;
use crate::text::{StopwordList, TermWeights};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CloudScope {
    Submissions,
    Pc,
    Reviewer(String),
}

impl FromStr for CloudScope {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "submissions" => Ok(Self::Submissions),
            "pc" => Ok(Self::Pc),
            _ => match s.strip_prefix("reviewer:") {
                Some(id) if !id.is_empty() => Ok(Self::Reviewer(id.to_owned())),
                _ => Err(ParamError::new(
                    "scope",
                    format!("expected `submissions`, `pc` or `reviewer:<id>`, got `{s}`"),
                )),
            },
        }
    }
}

impl fmt::Display for CloudScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Submissions => f.write_str("submissions"),
            Self::Pc => f.write_str("pc"),
            Self::Reviewer(id) => write!(f, "reviewer:{id}"),
        }
    }
}

pub fn scope_weights<T: Scalar>(
    conference: &Conference,
    scope: &CloudScope,
    stopwords: &StopwordList,
    title_boost: T,
) -> Result<TermWeights<T>, AnalysisError> {
    Ok(match scope {
        CloudScope::Submissions => submissions_weights(conference, stopwords, title_boost)?,
        CloudScope::Pc => pc_weights(conference, stopwords, title_boost)?,
        CloudScope::Reviewer(id) => {
            let reviewer = conference
                .reviewer(id)
                .ok_or_else(|| AnalysisError::UnknownReviewer(id.clone()))?;
            reviewer_weights(reviewer, stopwords, title_boost)?
        }
    })
}

/// Per-request changes to the default cloud configuration. The service's
/// query parameters and the CLI's flags both map onto this.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CloudOverrides {
    pub max_words: Option<usize>,
    pub width: Option<u32>,
    pub height: Option<u32>,
    pub seed: Option<u64>,
}

impl CloudOverrides {
    pub fn apply<T: Scalar>(&self, base: &CloudConfig<T>) -> CloudConfig<T> {
        let mut cfg = base.clone();
        if let Some(n) = self.max_words {
            cfg.max_words = n;
        }
        if let Some(w) = self.width {
            cfg.width = w;
        }
        if let Some(h) = self.height {
            cfg.height = h;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg
    }
}

/// A rendered cloud and the layout it came from.
#[derive(Debug, Clone)]
pub struct RenderedCloud<T> {
    pub layout: CloudLayout<T>,
    pub svg: String,
}

pub fn scope_cloud<T: Scalar>(
    conference: &Conference,
    scope: &CloudScope,
    stopwords: &StopwordList,
    title_boost: T,
    config: &CloudConfig<T>,
) -> Result<RenderedCloud<T>, AnalysisError> {
    let weights = scope_weights(conference, scope, stopwords, title_boost)?;
    let layout = place_words(&weights, config)?;
    let svg = render_svg(&layout);
    Ok(RenderedCloud { layout, svg })
}
