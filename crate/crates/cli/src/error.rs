use std::fmt;

use pcloud_clients::{FetchError, HydrateError};
use pcloud_core::analysis::AnalysisError;
use pcloud_core::corpus::CorpusError;
use pcloud_core::ParamError;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_NETWORK: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Io(String),
    Network(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            Self::Invalid(_) => EXIT_USAGE,
            Self::Io(_) => EXIT_IO,
            Self::Network(_) => EXIT_NETWORK,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Invalid(m) | Self::Io(m) | Self::Network(m) => f.write_str(m),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { .. } => Self::Io(e.to_string()),
            CorpusError::Parse { .. } | CorpusError::Validation { .. } => Self::Invalid(e.to_string()),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        Self::Invalid(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        Self::Invalid(e.to_string())
    }
}

impl From<FetchError> for CliError {
    fn from(e: FetchError) -> Self {
        match e {
            FetchError::InvalidArgument(_) => Self::Invalid(e.to_string()),
            FetchError::Cache(_) => Self::Io(e.to_string()),
            _ => Self::Network(e.to_string()),
        }
    }
}

impl From<HydrateError> for CliError {
    fn from(e: HydrateError) -> Self {
        match e {
            HydrateError::NoExternalId { .. } => Self::Invalid(e.to_string()),
            HydrateError::Fetch { reviewer_id, source } => match Self::from(source) {
                Self::Invalid(m) => Self::Invalid(format!("reviewer `{reviewer_id}`: {m}")),
                Self::Io(m) => Self::Io(format!("reviewer `{reviewer_id}`: {m}")),
                Self::Network(m) => Self::Network(format!("reviewer `{reviewer_id}`: {m}")),
            },
        }
    }
}
