use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, PathRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{any, get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use super::payload::{self, EventSort};
use super::{AppState, LoadedDataset};
use crate::analytics::{dominance, overview, sparsity, AnalyticsConfig, ReviewCategory};
use crate::annotator::Thresholds;
use crate::error::Error;
use crate::index::{instances_for_event, instances_for_trigger, top_triggers, LabelFilter, Page, DEFAULT_TOP_TRIGGERS};

pub const TOTAL_COUNT_HEADER: &str = "x-total-count";

const DEFAULT_PAGE_SIZE: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    NotFound,
    InvalidArgument,
    Internal,
}

/// Body of every non-2xx response.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: ErrorCode,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: ErrorCode, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code,
            message: message.into(),
            detail: None,
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, ErrorCode::InvalidArgument, message)
    }

    fn not_found(kind: &str, name: &str) -> Self {
        ApiError {
            detail: Some(serde_json::json!({ "kind": kind, "name": name })),
            ..ApiError::new(StatusCode::NOT_FOUND, ErrorCode::NotFound, format!("{kind} not found: {name}"))
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound { kind, name } => ApiError::not_found(kind, &name),
            Error::InvalidArgument(m) => ApiError::bad_request(m),
            other => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, ErrorCode::Internal, other.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

impl From<PathRejection> for ApiError {
    fn from(r: PathRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::bad_request(r.body_text())
    }
}

type ApiResult = Result<Response, ApiError>;
type Params = Result<Query<HashMap<String, String>>, QueryRejection>;

fn json<T: Serialize + ?Sized>(value: &T) -> ApiResult {
    let body = payload::to_json(value)?;
    Ok(([(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))], body).into_response())
}

fn paged<T: Serialize>(page: &Page<T>) -> ApiResult {
    let mut resp = json(page)?;
    resp.headers_mut().insert(TOTAL_COUNT_HEADER, HeaderValue::from(page.total));
    Ok(resp)
}

fn param<T: FromStr>(q: &HashMap<String, String>, name: &str, default: T) -> Result<T, ApiError> {
    match q.get(name) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| ApiError::bad_request(format!("invalid value for {name}: {raw:?}"))),
    }
}

fn paging(q: &HashMap<String, String>) -> Result<(usize, usize), ApiError> {
    Ok((param(q, "page", 1)?, param(q, "size", DEFAULT_PAGE_SIZE)?))
}

fn dataset(state: &AppState, name: &str) -> Result<Arc<LoadedDataset>, ApiError> {
    state
        .dataset(name)
        .cloned()
        .ok_or_else(|| ApiError::not_found("dataset", name))
}

fn analytics_config(q: &HashMap<String, String>) -> Result<AnalyticsConfig, ApiError> {
    let defaults = AnalyticsConfig::default();
    let config = AnalyticsConfig {
        min_instances: param(q, "k", defaults.min_instances)?,
        dominance_ratio: param(q, "ratio", defaults.dominance_ratio)?,
        ..defaults
    };
    config.validate()?;
    Ok(config)
}

pub(super) fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/v1/datasets", get(list_datasets))
        .route("/api/v1/datasets/{ds}/overview", get(get_overview))
        .route("/api/v1/datasets/{ds}/events", get(list_events))
        .route("/api/v1/datasets/{ds}/events/{event}/triggers", get(event_triggers))
        .route("/api/v1/datasets/{ds}/events/{event}/instances", get(event_instances))
        .route("/api/v1/datasets/{ds}/triggers/{word}", get(get_trigger))
        .route("/api/v1/datasets/{ds}/triggers/{word}/instances", get(trigger_instances))
        .route("/api/v1/datasets/{ds}/stats/sparsity", get(get_sparsity))
        .route("/api/v1/datasets/{ds}/stats/dominance", get(get_dominance))
        .route("/api/v1/datasets/{ds}/review-candidates", get(review_candidates))
        .route("/api/v1/annotate", post(post_annotate))
        .route("/api", any(unknown_route))
        .route("/api/{*rest}", any(unknown_route))
        .fallback(unknown_route)
        .method_not_allowed_fallback(method_not_allowed)
        .with_state(state)
}

async fn unknown_route(uri: axum::http::Uri) -> ApiError {
    ApiError::not_found("route", uri.path())
}

async fn method_not_allowed() -> ApiError {
    ApiError::new(StatusCode::METHOD_NOT_ALLOWED, ErrorCode::InvalidArgument, "method not allowed")
}

async fn list_datasets(State(state): State<Arc<AppState>>) -> ApiResult {
    let list: Vec<_> = state
        .datasets
        .values()
        .map(|d| payload::dataset_summary(&d.name, &d.snapshot))
        .collect();
    json(&list)
}

async fn get_overview(State(state): State<Arc<AppState>>, path: Result<Path<String>, PathRejection>) -> ApiResult {
    let Path(ds) = path?;
    let d = dataset(&state, &ds)?;
    json(&overview(&d.snapshot.index, &d.snapshot.corpus))
}

async fn list_events(State(state): State<Arc<AppState>>, path: Result<Path<String>, PathRejection>, q: Params) -> ApiResult {
    let Path(ds) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    let sort: EventSort = match q.get("sort") {
        Some(s) => s.parse()?,
        None => EventSort::Count,
    };
    let (page, size) = paging(&q)?;
    paged(&payload::event_summaries(&d.snapshot.index, sort, page, size)?)
}

async fn event_triggers(
    State(state): State<Arc<AppState>>,
    path: Result<Path<(String, String)>, PathRejection>,
    q: Params,
) -> ApiResult {
    let Path((ds, event)) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    let limit = param(&q, "limit", DEFAULT_TOP_TRIGGERS)?;
    json(&top_triggers(&d.snapshot.index, &event, limit)?)
}

async fn event_instances(
    State(state): State<Arc<AppState>>,
    path: Result<Path<(String, String)>, PathRejection>,
    q: Params,
) -> ApiResult {
    let Path((ds, event)) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    let (page, size) = paging(&q)?;
    paged(&instances_for_event(&d.snapshot.index, &d.snapshot.corpus, &event, page, size)?)
}

async fn get_trigger(State(state): State<Arc<AppState>>, path: Result<Path<(String, String)>, PathRejection>) -> ApiResult {
    let Path((ds, word)) = path?;
    let d = dataset(&state, &ds)?;
    json(&payload::trigger_summary(&d.snapshot.index, &word)?)
}

async fn trigger_instances(
    State(state): State<Arc<AppState>>,
    path: Result<Path<(String, String)>, PathRejection>,
    q: Params,
) -> ApiResult {
    let Path((ds, word)) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    let filter = q.get("event").map(|e| e.parse::<LabelFilter>()).transpose()?;
    let (page, size) = paging(&q)?;
    paged(&instances_for_trigger(
        &d.snapshot.index,
        &d.snapshot.corpus,
        &word,
        filter.as_ref(),
        page,
        size,
    )?)
}

async fn get_sparsity(State(state): State<Arc<AppState>>, path: Result<Path<String>, PathRejection>, q: Params) -> ApiResult {
    let Path(ds) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    json(&sparsity(&d.snapshot.index, &analytics_config(&q)?))
}

async fn get_dominance(State(state): State<Arc<AppState>>, path: Result<Path<String>, PathRejection>, q: Params) -> ApiResult {
    let Path(ds) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    json(&dominance(&d.snapshot.index, &analytics_config(&q)?))
}

async fn review_candidates(State(state): State<Arc<AppState>>, path: Result<Path<String>, PathRejection>, q: Params) -> ApiResult {
    let Path(ds) = path?;
    let Query(q) = q?;
    let d = dataset(&state, &ds)?;
    let category = q.get("category").map(|c| c.parse::<ReviewCategory>()).transpose()?;
    let (page, size) = paging(&q)?;
    paged(&payload::review_page(d.review_candidates(), category, page, size)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnotateRequest {
    text: String,
    dataset: String,
    #[serde(default)]
    tau_neg: Option<f64>,
    #[serde(default)]
    tau_event: Option<f64>,
}

async fn post_annotate(State(state): State<Arc<AppState>>, body: Result<Json<AnnotateRequest>, JsonRejection>) -> ApiResult {
    let Json(req) = body?;
    let d = dataset(&state, &req.dataset)?;
    let defaults = d.model.thresholds;
    let thresholds = Thresholds {
        tau_neg: req.tau_neg.unwrap_or(defaults.tau_neg),
        tau_event: req.tau_event.unwrap_or(defaults.tau_event),
    };
    json(&payload::annotate_payload(&d.name, &d.model, &req.text, thresholds)?)
}
