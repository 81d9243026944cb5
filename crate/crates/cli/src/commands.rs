use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use pcloud_clients::{FetchMode, IndexClient, ResponseCache, UreqTransport};
use pcloud_core::analysis::{conference_gap_report, suggestion_rows};
use pcloud_core::cloud::{scope_cloud, CloudOverrides};
use pcloud_core::corpus::{load_corpus, save_reviewers, LoadedCorpus};
use pcloud_core::text::StopwordList;
use pcloud_core::{CloudConfig, GapThresholds};
use pcloud_service::{AppState, Settings};

use crate::args::{Cli, CloudArgs, Command, FetchArgs, Format, GapArgs, ServeArgs, SuggestArgs};
use crate::error::CliError;
use crate::table::{gap_table, suggestion_table};

const HTTP_TIMEOUT: Duration = Duration::from_secs(30);

struct Context {
    corpus: std::path::PathBuf,
    stopwords: StopwordList,
    title_boost: f64,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, CliError> {
        let stopwords = match &cli.stopwords {
            Some(path) => StopwordList::load(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => StopwordList::english(),
        };
        if !(cli.title_boost.is_finite() && cli.title_boost > 0.0) {
            return Err(CliError::Invalid(format!(
                "--title-boost must be positive, got {}",
                cli.title_boost
            )));
        }
        Ok(Self {
            corpus: cli.corpus.clone(),
            stopwords,
            title_boost: cli.title_boost,
        })
    }

    fn load(&self) -> Result<LoadedCorpus, CliError> {
        let loaded = load_corpus(&self.corpus)?;
        for w in &loaded.warnings {
            eprintln!("warning: {w}");
        }
        Ok(loaded)
    }

    fn settings(&self) -> Settings {
        Settings {
            stopwords: self.stopwords.clone(),
            title_boost: self.title_boost,
            ..Settings::default()
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Context::new(&cli)?;
    match cli.command {
        Command::Ingest => ingest(&ctx),
        Command::FetchPubs(args) => fetch_pubs(&ctx, args),
        Command::Cloud(args) => cloud(&ctx, args),
        Command::GapReport(args) => gap_report(&ctx, args),
        Command::Suggest(args) => suggest(&ctx, args),
        Command::Serve(args) => serve(&ctx, args),
    }
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn ingest(ctx: &Context) -> Result<(), CliError> {
    let LoadedCorpus { conference, .. } = ctx.load()?;
    emit(&format!(
        "conference: {}\ntopics: {}\npapers: {}\nreviewers: {}\nassignments: {}\n",
        conference.name(),
        conference.topics().len(),
        conference.papers().len(),
        conference.reviewers().len(),
        conference.assignments().len(),
    ))
}

fn fetch_pubs(ctx: &Context, args: FetchArgs) -> Result<(), CliError> {
    let mut conference = ctx.load()?.conference;
    let targets: Vec<String> = match &args.reviewer {
        Some(id) => {
            conference
                .reviewer(id)
                .ok_or_else(|| CliError::Invalid(format!("unknown reviewer `{id}`")))?;
            vec![id.clone()]
        }
        None => conference.reviewers().iter().map(|r| r.id.clone()).collect(),
    };
    let mode = if args.offline {
        FetchMode::Offline
    } else {
        FetchMode::Online
    };
    let client = IndexClient::new(
        Arc::new(UreqTransport::new(HTTP_TIMEOUT)),
        ResponseCache::new(ResponseCache::default_dir()),
    );

    let mut updated = 0usize;
    let mut failure = None;
    for id in &targets {
        let reviewer = conference.reviewer(id).expect("target ids come from the corpus");
        match client.hydrate_reviewer(reviewer, &args.sources, args.limit, mode) {
            Ok(h) => {
                let origin: Vec<String> = h
                    .fetches
                    .iter()
                    .map(|f| format!("{}{}", f.provider, if f.from_cache { " (cached)" } else { "" }))
                    .collect();
                emit(&format!(
                    "{id}: {} publications, {} new, from {}\n",
                    h.reviewer.publications.len(),
                    h.added,
                    origin.join(", ")
                ))?;
                conference.set_publications(id, h.reviewer.publications)?;
                updated += 1;
            }
            Err(pcloud_clients::HydrateError::NoExternalId { .. }) if args.all => {
                eprintln!("warning: {id}: skipped, no external id for the chosen source");
            }
            Err(e) => {
                failure = Some(CliError::from(e));
                break;
            }
        }
    }
    if updated > 0 {
        save_reviewers(&conference, &ctx.corpus)?;
    }
    match failure {
        Some(e) => Err(e),
        None if updated == 0 => Err(CliError::Invalid(
            "no reviewer has an external id for the chosen source".into(),
        )),
        None => Ok(()),
    }
}

fn cloud(ctx: &Context, args: CloudArgs) -> Result<(), CliError> {
    let conference = ctx.load()?.conference;
    let overrides = CloudOverrides {
        max_words: args.max_words,
        width: args.width,
        height: args.height,
        seed: args.seed,
    };
    let cfg = overrides.apply(&CloudConfig::default());
    let rendered = scope_cloud(&conference, &args.scope, &ctx.stopwords, ctx.title_boost, &cfg)?;
    let layout = &rendered.layout;
    if layout.placed.is_empty() && layout.skipped.is_empty() {
        eprintln!("warning: {} has no terms; the cloud is blank", args.scope);
    }
    if !layout.skipped.is_empty() {
        eprintln!("warning: {} word(s) did not fit and were skipped", layout.skipped.len());
    }
    match &args.out {
        Some(path) => write_file(path, rendered.svg.as_bytes()),
        None => emit(&rendered.svg),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn gap_report(ctx: &Context, args: GapArgs) -> Result<(), CliError> {
    let defaults = GapThresholds::default();
    let thresholds = GapThresholds {
        min_share: args.min_share.unwrap_or(defaults.min_share),
        ratio: args.ratio.unwrap_or(defaults.ratio),
    };
    thresholds.validate()?;
    let conference = ctx.load()?.conference;
    let report = conference_gap_report(&conference, &ctx.stopwords, ctx.title_boost, thresholds)?;
    match args.format {
        Format::Table => emit(&gap_table(&report)),
        Format::Json => emit(&json_line(&report)),
    }
}

fn suggest(ctx: &Context, args: SuggestArgs) -> Result<(), CliError> {
    let conference = ctx.load()?.conference;
    let rows = suggestion_rows(&conference, &args.paper_id, args.k, &ctx.stopwords, ctx.title_boost)?;
    match args.format {
        Format::Table => emit(&suggestion_table(&rows)),
        Format::Json => emit(&json_line(&rows)),
    }
}

/// Compact JSON, the same bytes the service sends, plus a newline.
fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn serve(ctx: &Context, args: ServeArgs) -> Result<(), CliError> {
    let settings = Settings {
        cors_origin: args.cors_origin,
        ..ctx.settings()
    };
    let (state, warnings) = AppState::load(&ctx.corpus, settings)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Io(format!("runtime: {e}")))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(args.addr)
            .await
            .map_err(|e| CliError::Io(format!("cannot bind {}: {e}", args.addr)))?;
        let local = listener.local_addr().map_err(|e| CliError::Io(e.to_string()))?;
        eprintln!("listening on http://{local}");
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        pcloud_service::serve(listener, state, shutdown)
            .await
            .map_err(|e| CliError::Io(format!("server: {e}")))
    })
}
