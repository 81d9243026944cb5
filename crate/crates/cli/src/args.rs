use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcloud_clients::Provider;
use pcloud_core::cloud::CloudScope;

#[derive(Debug, Parser)]
#[command(
    name = "pcloud",
    version,
    about = "Word clouds and coverage analysis for programme committee chairs"
)]
pub struct Cli {
    /// Corpus directory holding conference.json, papers.json and reviewers.json.
    #[arg(long, global = true, default_value = ".")]
    pub corpus: PathBuf,
    /// Stopword file, one word per line. Defaults to the bundled English list.
    #[arg(long, global = true)]
    pub stopwords: Option<PathBuf>,
    /// Multiplier applied to title terms.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub title_boost: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the corpus and print counts and warnings.
    Ingest,
    /// Fetch reviewers' publications from DBLP or Semantic Scholar.
    FetchPubs(FetchArgs),
    /// Render a word cloud as SVG.
    Cloud(CloudArgs),
    /// Compare submission topics with PC competence.
    GapReport(GapArgs),
    /// Rank reviewers for a paper.
    Suggest(SuggestArgs),
    /// Run the HTTP API.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct FetchArgs {
    /// Reviewer to hydrate.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub reviewer: Option<String>,
    /// Hydrate every reviewer that has an id for the chosen source.
    #[arg(long)]
    pub all: bool,
    /// `dblp` or `semantic-scholar`; repeat to merge several in order.
    #[arg(long = "source", default_value = "dblp")]
    pub sources: Vec<Provider>,
    /// Read the response cache only; never touch the network.
    #[arg(long)]
    pub offline: bool,
    /// Maximum publications requested per source.
    #[arg(long, default_value_t = 100)]
    pub limit: u32,
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    /// `submissions`, `pc` or `reviewer:<id>`.
    #[arg(long, default_value = "submissions")]
    pub scope: CloudScope,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub max_words: Option<usize>,
    #[arg(long)]
    pub width: Option<u32>,
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Smallest share of submission mass a term needs to be reported.
    #[arg(long)]
    pub min_share: Option<f64>,
    /// Flag terms whose PC/submission share ratio is below this.
    #[arg(long)]
    pub ratio: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SuggestArgs {
    pub paper_id: String,
    /// Number of reviewers listed.
    #[arg(short, default_value_t = 10)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub addr: SocketAddr,
    /// Browser origin allowed by CORS; any origin when absent.
    #[arg(long)]
    pub cors_origin: Option<String>,
}
