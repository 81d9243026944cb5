//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use pcloud_clients::testing::{FailOnCallTransport, FixtureTransport, RecordingSleeper};
use pcloud_clients::{dblp, semantic_scholar, FetchError, FetchMode, IndexClient, ResponseCache};
use pcloud_core::analysis::{conference_gap_report, match_score, rank_reviewers};
use pcloud_core::cloud::{scope_cloud, CloudScope};
use pcloud_core::corpus::{Conference, ExternalIds, Paper, Reviewer};
use pcloud_core::layout::place_words;
use pcloud_core::text::{build_corpus_weights, DocumentSource, RawDocument, StopwordList};
use pcloud_core::{CloudConfig, GapThresholds, TermWeights};
use pcloud_service::{router, AppState, Settings};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

const BUNDLED_STOPWORDS: &str = include_str!("../../core/src/text/stopwords_en.txt");

fn oracle_stopwords() -> BTreeSet<String> {
    BUNDLED_STOPWORDS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// Character-at-a-time tokenizer written independently of the library.
fn oracle_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| {
        let piece = current.trim_matches(|c| c == '-' || c == '\'').to_owned();
        current.clear();
        if piece.chars().count() >= 2 && piece.chars().any(char::is_alphabetic) {
            out.push(piece);
        }
    };
    for c in text.to_lowercase().chars() {
        if c.is_alphabetic() || c.is_numeric() || c == '-' || c == '\'' {
            current.push(c);
        } else {
            flush(&mut current);
        }
    }
    flush(&mut current);
    out
}

fn oracle_recount(docs: &[(String, String)], stop: &BTreeSet<String>) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for (title, abs) in docs {
        for tok in oracle_tokens(title).into_iter().chain(oracle_tokens(abs)) {
            if !stop.contains(&tok) {
                *counts.entry(tok).or_insert(0) += 1;
            }
        }
    }
    counts
}

fn paper(id: &str, title: &str, abstract_text: &str) -> Paper {
    Paper {
        id: id.into(),
        title: title.into(),
        abstract_text: abstract_text.into(),
        topics: vec![],
        author_names: vec![],
    }
}

fn reviewer(id: &str, pubs: Vec<RawDocument>) -> Reviewer {
    Reviewer {
        id: id.into(),
        name: format!("Reviewer {id}"),
        affiliation: None,
        external_ids: ExternalIds::default(),
        publications: pubs,
        accepted_topics: vec![],
    }
}

fn conference(papers: Vec<Paper>, reviewers: Vec<Reviewer>) -> Conference {
    Conference::new("Acceptance", vec![], papers, reviewers, vec![])
        .unwrap()
        .0
}

const VOCAB: &[&str] = &[
    "Blockchain",
    "consensus",
    "State-of-the-Art",
    "don't",
    "'quoted'",
    "--dash--",
    "x",
    "2021",
    "COVID-19",
    "Café",
    "naïve",
    "ÉCOLE",
    "graph",
    "Graph",
    "GRAPHS",
    "neural",
    "networks",
    "the",
    "and",
    "of",
    "a",
    "reviewer's",
    "co-author",
    "e-mail",
    "it's",
    "3D",
    "π",
    "日本語",
    "Straße",
    "über",
    "ab",
    "i.e.",
    "x-ray",
];
const PUNCT: &[&str] = &[
    " ", " ", " ", ", ", ". ", "; ", ": ", "! ", "? ", " (", ") ", " [", "] ", "\n", "\t", "/", "—", "…", "\"", "«",
    "»",
];

const ALPHABET: &[char] = &[
    'a', 'b', 'e', 'K', 'Q', 'z', 'é', 'Ü', 'ß', 'ж', '0', '7', '-', '\'', '_', '.',
];

fn random_text(rng: &mut StdRng, words: usize) -> String {
    let mut s = String::new();
    for _ in 0..words {
        if rng.gen_bool(0.4) {
            let len = rng.gen_range(1..=6);
            s.extend((0..len).map(|_| *ALPHABET.choose(rng).unwrap()));
        } else {
            s.push_str(VOCAB.choose(rng).unwrap());
        }
        s.push_str(PUNCT.choose(rng).unwrap());
    }
    s
}

fn pipeline_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    let docs: Vec<(String, String)> = (0..100)
        .map(|_| {
            let t = rng.gen_range(0..12);
            let a = rng.gen_range(0..60);
            (random_text(&mut rng, t), random_text(&mut rng, a))
        })
        .collect();
    let raw: Vec<RawDocument> = docs
        .iter()
        .enumerate()
        .map(|(i, (t, a))| RawDocument::new(format!("d{i}"), t.clone(), a.clone(), DocumentSource::Submission))
        .collect();
    let got = build_corpus_weights(&raw, &StopwordList::english(), 1.0f64).map_err(|e| e.to_string())?;
    let want = oracle_recount(&docs, &oracle_stopwords());
    let got_map: BTreeMap<String, f64> = got.iter().map(|(t, w)| (t.to_owned(), w)).collect();
    let keys: BTreeSet<&String> = got_map.keys().chain(want.keys()).collect();
    let mismatches = keys
        .iter()
        .filter(|k| got_map.get(**k).copied() != want.get(**k).map(|&c| c as f64))
        .count();
    ensure!(mismatches == 0, "{mismatches} term mismatches against the recount");
    Ok(format!("100 documents, {} distinct terms, 0 mismatches", want.len()))
}

fn stopword_exclusion() -> Outcome {
    let stop = oracle_stopwords();
    let mut rng = StdRng::seed_from_u64(7);
    let words: Vec<&String> = stop.iter().collect();
    let content = ["ontology", "reasoning", "retrieval", "indexing", "semantics"];
    let papers: Vec<Paper> = (0..20)
        .map(|i| {
            let mut text: Vec<String> = words.iter().map(|w| w.to_uppercase()).collect();
            text.extend(content.iter().map(|w| w.to_string()));
            text.shuffle(&mut rng);
            paper(&format!("p{i}"), &text[..10].join(" "), &text[10..].join(", "))
        })
        .collect();
    let conf = conference(papers, vec![]);
    let cfg = CloudConfig {
        width: 2000,
        height: 1500,
        max_words: 1000,
        ..CloudConfig::default()
    };
    let rendered =
        scope_cloud(&conf, &CloudScope::Submissions, &StopwordList::english(), 1.0, &cfg).map_err(|e| e.to_string())?;
    let shown: Vec<&str> = rendered
        .layout
        .placed
        .iter()
        .map(|b| b.term.as_str())
        .chain(rendered.layout.skipped.iter().map(|(t, _)| t.as_str()))
        .collect();
    let leaked: Vec<&&str> = shown.iter().filter(|t| stop.contains(**t)).collect();
    ensure!(leaked.is_empty(), "stopwords in cloud: {leaked:?}");
    let in_svg = stop
        .iter()
        .filter(|w| rendered.svg.contains(&format!("data-term=\"{w}\"")))
        .count();
    ensure!(in_svg == 0, "{in_svg} stopwords appear in the SVG");
    ensure!(
        shown.len() == content.len(),
        "expected only content words, got {shown:?}"
    );
    Ok(format!("{} stopwords seeded, 0 in cloud", stop.len()))
}

fn svg_font_sizes(svg: &str) -> Vec<(String, f64)> {
    svg.lines()
        .filter(|l| l.contains("<text"))
        .map(|l| {
            let attr = |name: &str| {
                let start = l.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
                let end = start + l[start..].find('"').unwrap();
                l[start..end].to_owned()
            };
            (attr("data-term"), attr("font-size").parse().unwrap())
        })
        .collect()
}

const FILLER: &[&str] = &[
    "scheduling",
    "caching",
    "compilers",
    "robotics",
    "vision",
    "privacy",
    "storage",
    "routing",
    "kernels",
    "databases",
    "sensors",
    "testing",
    "fuzzing",
    "quantum",
    "education",
    "agents",
    "planning",
    "hashing",
    "sorting",
    "streams",
    "graphs",
    "energy",
    "mobile",
    "wireless",
    "cloud",
    "edge",
    "ranking",
    "search",
    "parsing",
    "typing",
    "proofs",
    "logic",
    "games",
    "audio",
    "speech",
    "imaging",
    "genomics",
    "proteins",
];

fn blockchain_papers(rng: &mut StdRng) -> Vec<Paper> {
    let mut with_topic: Vec<bool> = (0..40).map(|i| i < 30).collect();
    with_topic.shuffle(rng);
    with_topic
        .iter()
        .enumerate()
        .map(|(i, &has)| {
            let mut words: Vec<&str> = FILLER.choose_multiple(rng, 6).copied().collect();
            if has {
                words.push("blockchain");
            }
            words.shuffle(rng);
            paper(&format!("p{i}"), &words[..3].join(" "), &words[3..].join(" "))
        })
        .collect()
}

fn top_term_visibility() -> Outcome {
    let mut rng = StdRng::seed_from_u64(30);
    let papers = blockchain_papers(&mut rng);
    let docs: Vec<(String, String)> = papers
        .iter()
        .map(|p| (p.title.clone(), p.abstract_text.clone()))
        .collect();
    let counts = oracle_recount(&docs, &oracle_stopwords());
    let (top, top_count) = counts.iter().max_by_key(|(_, &c)| c).unwrap();
    let runner_up = counts.iter().filter(|(t, _)| *t != top).map(|(_, &c)| c).max().unwrap();
    ensure!(
        top == "blockchain" && *top_count == 30 && runner_up < 30,
        "oracle top term is {top} ({top_count})"
    );

    let conf = conference(papers, vec![]);
    let rendered = scope_cloud(
        &conf,
        &CloudScope::Submissions,
        &StopwordList::english(),
        1.0,
        &CloudConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let sizes = svg_font_sizes(&rendered.svg);
    let (_, bc) = sizes
        .iter()
        .find(|(t, _)| t == "blockchain")
        .ok_or("blockchain not placed")?;
    let next = sizes
        .iter()
        .filter(|(t, _)| t != "blockchain")
        .map(|(_, s)| *s)
        .fold(f64::MIN, f64::max);
    ensure!(*bc > next, "blockchain font {bc} not above runner-up {next}");
    Ok(format!("blockchain {bc:.2}px, next largest {next:.2}px"))
}

struct Case {
    weights: TermWeights,
    cfg: CloudConfig,
}

fn random_case(rng: &mut StdRng) -> Case {
    let n = rng.gen_range(1..=150);
    let weights = TermWeights::from_pairs((0..n).map(|i| {
        let len = rng.gen_range(2..=14);
        let term: String = (0..len).map(|_| rng.gen_range(b'a'..=b'z') as char).collect();
        (
            format!("{term}{i}"),
            rng.gen_range(1..=60) as f64 * if rng.gen_bool(0.3) { 0.5 } else { 1.0 },
        )
    }))
    .unwrap();
    let min_font = rng.gen_range(6.0..20.0);
    let cfg = CloudConfig {
        width: rng.gen_range(120..=1200),
        height: rng.gen_range(90..=900),
        min_font_size: min_font,
        max_font_size: min_font + rng.gen_range(0.0..60.0),
        padding: rng.gen_range(0.0..10.0),
        spiral_step: rng.gen_range(2.0..12.0),
        angle_step: rng.gen_range(0.05..0.4),
        max_words: rng.gen_range(1..=150),
        seed: rng.gen(),
        ..CloudConfig::default()
    };
    Case { weights, cfg }
}

/// Padded boxes as (x0, y0, x1, y1), computed from the center and the
/// fixed glyph model rather than from the layout's own width/height.
fn padded_boxes(layout: &pcloud_core::CloudLayout) -> Vec<(f64, f64, f64, f64)> {
    let pad = layout.config.padding / 2.0;
    layout
        .placed
        .iter()
        .map(|b| {
            let w = 0.6 * b.font_size * b.term.chars().count() as f64;
            let h = 1.2 * b.font_size;
            (
                b.x - w / 2.0 - pad,
                b.y - h / 2.0 - pad,
                b.x + w / 2.0 + pad,
                b.y + h / 2.0 + pad,
            )
        })
        .collect()
}

fn layout_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(200);
    let (mut overlaps, mut outside, mut placed, mut partition_errors) = (0usize, 0usize, 0usize, 0usize);
    for _ in 0..200 {
        let case = random_case(&mut rng);
        let layout = place_words(&case.weights, &case.cfg).map_err(|e| e.to_string())?;
        let boxes = padded_boxes(&layout);
        let (w, h) = (case.cfg.width as f64, case.cfg.height as f64);
        for (i, a) in boxes.iter().enumerate() {
            if a.0 < 0.0 || a.1 < 0.0 || a.2 > w || a.3 > h {
                outside += 1;
            }
            for b in &boxes[i + 1..] {
                if a.0 < b.2 && b.0 < a.2 && a.1 < b.3 && b.1 < a.3 {
                    overlaps += 1;
                }
            }
        }
        placed += boxes.len();
        let mut expected: Vec<(&str, f64)> = case.weights.iter().collect();
        expected.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap().then_with(|| x.0.cmp(y.0)));
        expected.truncate(case.cfg.max_words);
        let got: BTreeSet<&str> = layout
            .placed
            .iter()
            .map(|b| b.term.as_str())
            .chain(layout.skipped.iter().map(|(t, _)| t.as_str()))
            .collect();
        if got != expected.iter().map(|e| e.0).collect() || got.len() != layout.placed.len() + layout.skipped.len() {
            partition_errors += 1;
        }
    }
    ensure!(
        overlaps == 0 && outside == 0,
        "{overlaps} overlapping pairs, {outside} boxes outside the canvas"
    );
    ensure!(
        partition_errors == 0,
        "{partition_errors} layouts do not partition the top terms"
    );
    Ok(format!("200 layouts, {placed} boxes, 0 overlaps, 0 outside"))
}

fn run_cloud(corpus: &Path, out: &Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_pcloud"))
        .arg("--corpus")
        .arg(corpus)
        .args([
            "cloud",
            "--scope",
            "submissions",
            "--seed",
            "1234",
            "--max-words",
            "80",
            "--out",
        ])
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "pcloud exited with {status}");
    std::fs::read(out).map_err(|e| e.to_string())
}

fn write_corpus(dir: &Path, conf: &Conference) {
    std::fs::write(
        dir.join("conference.json"),
        json!({"name": conf.name(), "topics": conf.topics()}).to_string(),
    )
    .unwrap();
    std::fs::write(dir.join("papers.json"), serde_json::to_vec(conf.papers()).unwrap()).unwrap();
    std::fs::write(
        dir.join("reviewers.json"),
        serde_json::to_vec(conf.reviewers()).unwrap(),
    )
    .unwrap();
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(5);
    write_corpus(dir.path(), &conference(blockchain_papers(&mut rng), vec![]));
    let first = run_cloud(dir.path(), &dir.path().join("a.svg"))?;
    let second = run_cloud(dir.path(), &dir.path().join("b.svg"))?;
    ensure!(first == second, "two runs produced different SVG bytes");
    ensure!(first.windows(5).any(|w| w == b"<text"), "SVG has no words");
    Ok(format!("two process runs, {} identical bytes", first.len()))
}

fn monotone_sizing() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1000);
    let (mut pairs, mut inversions) = (0usize, 0usize);
    while pairs < 1000 {
        let case = random_case(&mut rng);
        let layout = place_words(&case.weights, &case.cfg).map_err(|e| e.to_string())?;
        if layout.placed.len() < 2 {
            continue;
        }
        for _ in 0..50 {
            let a = layout.placed.choose(&mut rng).unwrap();
            let b = layout.placed.choose(&mut rng).unwrap();
            if a.weight > b.weight && a.font_size < b.font_size || a.weight == b.weight && a.font_size != b.font_size {
                inversions += 1;
            }
            pairs += 1;
        }
    }
    ensure!(inversions == 0, "{inversions} inversions in {pairs} pairs");
    Ok(format!("{pairs} pairs, 0 inversions"))
}

fn gap_detection() -> Outcome {
    let topic_a = ["quantum", "qubit", "entanglement"];
    let topic_b = ["compiler", "register", "allocation"];
    let mut papers: Vec<Paper> = (0..10)
        .map(|i| paper(&format!("a{i}"), &topic_a.join(" "), "we present an evaluation"))
        .collect();
    papers.extend((0..2).map(|i| paper(&format!("b{i}"), &topic_b.join(" "), "we present an evaluation")));
    let pubs: Vec<RawDocument> = (0..10)
        .map(|i| RawDocument::new(format!("pub{i}"), topic_b.join(" "), "", DocumentSource::Publication))
        .collect();
    let reviewers = vec![reviewer("r1", pubs[..5].to_vec()), reviewer("r2", pubs[5..].to_vec())];
    let conf = conference(papers, reviewers);
    let report = conference_gap_report(&conf, &StopwordList::english(), 1.0, GapThresholds::default())
        .map_err(|e| e.to_string())?;
    let flagged: BTreeSet<&str> = report.iter().filter(|e| e.flagged).map(|e| e.term.as_str()).collect();
    let reported: BTreeSet<&str> = report.iter().map(|e| e.term.as_str()).collect();
    for t in topic_a {
        ensure!(flagged.contains(t), "topic A term `{t}` not flagged");
    }
    for t in topic_b {
        ensure!(reported.contains(t), "topic B term `{t}` below the share threshold");
        ensure!(!flagged.contains(t), "topic B term `{t}` flagged");
    }
    Ok(format!("A flagged {:?}, B unflagged", topic_a))
}

fn random_weights(rng: &mut StdRng, vocab: usize) -> TermWeights {
    let n = rng.gen_range(0..=20);
    TermWeights::from_pairs((0..n).map(|_| (format!("t{}", rng.gen_range(0..vocab)), rng.gen_range(0.01..50.0))))
        .unwrap()
}

fn match_score_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst_asym = 0.0f64;
    for _ in 0..2000 {
        let a = random_weights(&mut rng, 40);
        let b = random_weights(&mut rng, 40);
        let (ab, ba) = (match_score(&a, &b), match_score(&b, &a));
        worst_asym = worst_asym.max((ab - ba).abs());
        ensure!((0.0..=1.0).contains(&ab), "score {ab} out of range");
    }
    ensure!(worst_asym <= 1e-12, "asymmetry {worst_asym:e}");

    let mut orders = 0;
    for _ in 0..200 {
        let paper = random_weights(&mut rng, 40);
        let reviewers: Vec<(String, TermWeights)> = (0..12)
            .map(|i| (format!("r{i:02}"), random_weights(&mut rng, 40)))
            .collect();
        let base: Vec<String> = rank_reviewers(&paper, &reviewers, 12)
            .into_iter()
            .map(|s| s.reviewer_id)
            .collect();
        for _ in 0..5 {
            let scaled: Vec<(String, TermWeights)> = reviewers
                .iter()
                .map(|(id, w)| (id.clone(), w.scaled(10f64.powf(rng.gen_range(-3.0..3.0))).unwrap()))
                .collect();
            let got: Vec<String> = rank_reviewers(&paper, &scaled, 12)
                .into_iter()
                .map(|s| s.reviewer_id)
                .collect();
            ensure!(got == base, "order changed under scaling: {base:?} -> {got:?}");
            orders += 1;
        }
    }
    Ok(format!(
        "max asymmetry {worst_asym:e}, {orders} rescaled rankings unchanged"
    ))
}

fn client_fixture(name: &str) -> String {
    std::fs::read_to_string(workspace().join("crates/clients/tests/fixtures").join(name)).unwrap()
}

fn fixture_titles(body: &str, pointer: &str, field: &str) -> Vec<String> {
    let v: Value = serde_json::from_str(body).unwrap();
    v.pointer(pointer)
        .and_then(Value::as_array)
        .map(|a| a.iter().map(|x| x[field].as_str().unwrap().to_owned()).collect())
        .unwrap_or_default()
}

fn clients() -> Outcome {
    let cache_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let sleeper = Arc::new(RecordingSleeper::default());
    let client = |t: Arc<dyn pcloud_clients::Transport>, dir: &Path| {
        IndexClient::new(t, ResponseCache::new(dir))
            .with_sleeper(sleeper.clone())
            .with_min_interval(Duration::ZERO)
    };

    let dblp_body = client_fixture("dblp_three_hits.json");
    let dblp_url = dblp::search_url("Mira Solberg", 100);
    let t = Arc::new(FixtureTransport::new().route(&dblp_url, 200, dblp_body.as_str()));
    let docs = client(t, cache_dir.path())
        .fetch_dblp("Mira Solberg", 100, FetchMode::Online)
        .map_err(|e| e.to_string())?
        .documents;
    let titles: Vec<String> = docs.iter().map(|d| d.title.clone()).collect();
    let hits: Vec<Value> = serde_json::from_str::<Value>(&dblp_body).unwrap()["result"]["hits"]["hit"]
        .as_array()
        .unwrap()
        .clone();
    let expected: Vec<String> = hits
        .iter()
        .map(|h| h["info"]["title"].as_str().unwrap().to_owned())
        .collect();
    ensure!(titles == expected && titles.len() == 3, "DBLP titles {titles:?}");

    let s2_body = client_fixture("s2_two_papers.json");
    let s2_url = semantic_scholar::author_papers_url("2718281", 100);
    let t = Arc::new(FixtureTransport::new().route(&s2_url, 200, s2_body.as_str()));
    let docs = client(t, cache_dir.path())
        .fetch_semantic_scholar("2718281", 100, FetchMode::Online)
        .map_err(|e| e.to_string())?
        .documents;
    let titles: Vec<String> = docs.iter().map(|d| d.title.clone()).collect();
    ensure!(
        titles == fixture_titles(&s2_body, "/data", "title") && titles.len() == 2,
        "S2 titles {titles:?}"
    );

    // offline: warm hits and a cold miss, all without touching the transport
    let offline = client(Arc::new(FailOnCallTransport), cache_dir.path());
    let warm = offline
        .fetch_dblp("Mira Solberg", 100, FetchMode::Offline)
        .map_err(|e| e.to_string())?;
    ensure!(warm.from_cache && warm.documents.len() == 3, "offline warm read failed");
    let cold = offline.fetch_semantic_scholar("999", 100, FetchMode::Offline);
    ensure!(
        matches!(cold, Err(FetchError::CacheMiss { .. })),
        "offline cold read: {cold:?}"
    );

    let limited = Arc::new(FixtureTransport::new().route(&s2_url, 429, client_fixture("s2_rate_limited.json")));
    let fresh = tempfile::tempdir().map_err(|e| e.to_string())?;
    let err = client(limited.clone(), fresh.path()).fetch_semantic_scholar("2718281", 100, FetchMode::Online);
    ensure!(
        matches!(err, Err(FetchError::RateLimited { attempts: 4, .. })) && limited.calls() == 4,
        "429 handling: {err:?} after {} calls",
        limited.calls()
    );
    Ok("DBLP 3 titles, S2 2 titles, offline 0 network calls, 429 -> 4 attempts".into())
}

async fn call(app: axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json");
    let body = body.map_or_else(Body::empty, |v| Body::from(v.to_string()));
    let resp = app.oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn service_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for entry in std::fs::read_dir(workspace().join("fixtures/corpus")).map_err(|e| e.to_string())? {
        let entry = entry.map_err(|e| e.to_string())?;
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).map_err(|e| e.to_string())?;
    }
    let disk =
        || -> Value { serde_json::from_slice(&std::fs::read(dir.path().join("assignments.json")).unwrap()).unwrap() };
    let (state, _) = AppState::load(dir.path(), Settings::default()).map_err(|e| e.to_string())?;
    let rt = tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .map_err(|e| e.to_string())?;
    rt.block_on(async {
        let app = router(state);
        let (s, stored) = call(
            app.clone(),
            "POST",
            "/api/assignments",
            Some(json!({"paperId": "p2", "reviewerId": "r3"})),
        )
        .await;
        ensure!(s == StatusCode::OK, "POST returned {s}");
        let (_, listed) = call(app.clone(), "GET", "/api/assignments", None).await;
        ensure!(
            listed.as_array().is_some_and(|a| a.contains(&stored)),
            "GET misses the new assignment"
        );
        ensure!(disk() == listed, "disk {} differs from API {listed}", disk());
        let (s, _) = call(app.clone(), "DELETE", "/api/assignments/p2/r3", None).await;
        ensure!(s == StatusCode::OK, "DELETE returned {s}");
        let (_, listed) = call(app.clone(), "GET", "/api/assignments", None).await;
        ensure!(
            listed == json!([]) && disk() == json!([]),
            "DELETE did not reverse both views"
        );
        Ok("POST visible via GET and on disk; DELETE reverses both".to_owned())
    })
}

fn main() {
    let criteria: &[Criterion] = &[
        ("pipeline oracle equivalence", pipeline_oracle),
        ("stopword exclusion", stopword_exclusion),
        ("top-term visibility", top_term_visibility),
        ("layout soundness", layout_soundness),
        ("determinism across processes", determinism),
        ("monotone sizing", monotone_sizing),
        ("gap detection", gap_detection),
        ("match score properties", match_score_properties),
        ("clients", clients),
        ("service round-trip", service_round_trip),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  {name:<30} {detail} [{ms} ms]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<30} {why} [{ms} ms]");
            }
        }
    }
    println!(
        "{}/{} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
