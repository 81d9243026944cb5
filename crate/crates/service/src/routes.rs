use std::collections::HashMap;
use std::str::FromStr;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, Method};
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get};
use axum::{Json, Router};
use pcloud_core::analysis::{conference_gap_report, suggestion_rows};
use pcloud_core::cloud::{scope_cloud, CloudOverrides, CloudScope};
use pcloud_core::corpus::{Assignment, AssignmentOrigin, AssignmentStatus};
use pcloud_core::GapThresholds;
use serde::Deserialize;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::error::ApiError;
use crate::state::AppState;

type Params = Result<Query<HashMap<String, String>>, QueryRejection>;

pub fn router(state: AppState) -> Router {
    let cors = cors_layer(state.settings().cors_origin.as_deref());
    Router::new()
        .route("/api/papers", get(papers))
        .route("/api/reviewers", get(reviewers))
        .route("/api/assignments", get(assignments).post(post_assignment))
        .route("/api/assignments/{paper_id}/{reviewer_id}", delete(delete_assignment))
        .route("/api/clouds/submissions.svg", get(submissions_cloud))
        .route("/api/clouds/pc.svg", get(pc_cloud))
        .route("/api/clouds/reviewer/{file}", get(reviewer_cloud))
        .route("/api/gap-report", get(gap_report))
        .route("/api/papers/{id}/suggestions", get(suggestions))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .method_not_allowed_fallback(|| async { ApiError::method_not_allowed() })
        .layer(cors)
        .with_state(state)
}

fn cors_layer(origin: Option<&str>) -> CorsLayer {
    let allow = match origin.map(HeaderValue::from_str) {
        Some(Ok(v)) => AllowOrigin::exact(v),
        Some(Err(_)) => {
            log::warn!("ignoring malformed CORS origin, allowing any");
            AllowOrigin::any()
        }
        None => AllowOrigin::any(),
    };
    CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST, Method::DELETE])
        .allow_headers([header::CONTENT_TYPE])
}

fn params(p: Params) -> Result<HashMap<String, String>, ApiError> {
    p.map(|Query(q)| q).map_err(|e| ApiError::bad_request(e.body_text()))
}

fn parse<T: FromStr>(q: &HashMap<String, String>, name: &str) -> Result<Option<T>, ApiError> {
    q.get(name)
        .map(|raw| {
            raw.trim()
                .parse()
                .map_err(|_| ApiError::bad_request(format!("invalid `{name}`: `{raw}`")))
        })
        .transpose()
}

async fn papers(State(state): State<AppState>) -> Response {
    Json(state.snapshot().papers()).into_response()
}

async fn reviewers(State(state): State<AppState>) -> Response {
    Json(state.snapshot().reviewers()).into_response()
}

async fn assignments(State(state): State<AppState>) -> Response {
    Json(state.snapshot().assignments()).into_response()
}

fn cloud(state: &AppState, scope: CloudScope, q: Params) -> Result<Response, ApiError> {
    let q = params(q)?;
    let overrides = CloudOverrides {
        max_words: parse(&q, "maxWords")?,
        width: parse(&q, "width")?,
        height: parse(&q, "height")?,
        seed: parse(&q, "seed")?,
    };
    let settings = state.settings();
    let cfg = overrides.apply(&settings.cloud);
    let rendered = scope_cloud(
        &state.snapshot(),
        &scope,
        &settings.stopwords,
        settings.title_boost,
        &cfg,
    )?;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], rendered.svg).into_response())
}

async fn submissions_cloud(State(state): State<AppState>, q: Params) -> Result<Response, ApiError> {
    cloud(&state, CloudScope::Submissions, q)
}

async fn pc_cloud(State(state): State<AppState>, q: Params) -> Result<Response, ApiError> {
    cloud(&state, CloudScope::Pc, q)
}

async fn reviewer_cloud(
    State(state): State<AppState>,
    Path(file): Path<String>,
    q: Params,
) -> Result<Response, ApiError> {
    let id = file
        .strip_suffix(".svg")
        .filter(|id| !id.is_empty())
        .ok_or_else(|| ApiError::not_found(format!("no such cloud `{file}`")))?;
    cloud(&state, CloudScope::Reviewer(id.to_owned()), q)
}

async fn gap_report(State(state): State<AppState>, q: Params) -> Result<Response, ApiError> {
    let q = params(q)?;
    let settings = state.settings();
    let thresholds = GapThresholds {
        min_share: parse(&q, "minShare")?.unwrap_or(settings.thresholds.min_share),
        ratio: parse(&q, "ratio")?.unwrap_or(settings.thresholds.ratio),
    };
    let report = conference_gap_report(&state.snapshot(), &settings.stopwords, settings.title_boost, thresholds)?;
    Ok(Json(report).into_response())
}

async fn suggestions(State(state): State<AppState>, Path(id): Path<String>, q: Params) -> Result<Response, ApiError> {
    let q = params(q)?;
    let settings = state.settings();
    let k = parse(&q, "k")?.unwrap_or(settings.default_k);
    let rows = suggestion_rows(&state.snapshot(), &id, k, &settings.stopwords, settings.title_boost)?;
    Ok(Json(rows).into_response())
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct AssignmentRequest {
    paper_id: String,
    reviewer_id: String,
    #[serde(default)]
    status: Option<AssignmentStatus>,
    #[serde(default)]
    origin: Option<AssignmentOrigin>,
}

async fn post_assignment(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: AssignmentRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request(format!("invalid assignment body: {e}")))?;
    let assignment = Assignment::new(
        req.paper_id,
        req.reviewer_id,
        req.status.unwrap_or(AssignmentStatus::Proposed),
        req.origin.unwrap_or(AssignmentOrigin::Manual),
    );
    let stored = state
        .mutate(move |conf| Ok(conf.upsert_assignment(assignment)?.clone()))
        .await?;
    Ok(Json(stored).into_response())
}

async fn delete_assignment(
    State(state): State<AppState>,
    Path((paper_id, reviewer_id)): Path<(String, String)>,
) -> Result<Response, ApiError> {
    let removed = state
        .mutate(|conf| {
            conf.remove_assignment(&paper_id, &reviewer_id)
                .ok_or_else(|| ApiError::not_found(format!("`{reviewer_id}` is not assigned to `{paper_id}`")))
        })
        .await?;
    Ok(Json(removed).into_response())
}
