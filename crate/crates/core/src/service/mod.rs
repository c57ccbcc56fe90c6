//! JSON-over-HTTP API under `/api/v1`.
//!
//! Datasets are loaded once from snapshot files and never change while the
//! server runs, so every handler is a read-only computation over shared
//! immutable state. `POST /annotate` is stateless per request.
//!
//! | method | path | payload |
//! |---|---|---|
//! | GET | `/api/v1/datasets` | `[DatasetSummary]` |
//! | GET | `/api/v1/datasets/{ds}/overview` | `OverviewReport` |
//! | GET | `/api/v1/datasets/{ds}/events?sort=count\|name&page&size` | `Page<EventSummary>` |
//! | GET | `/api/v1/datasets/{ds}/events/{event}/triggers?limit=10` | `[TriggerCount]` |
//! | GET | `/api/v1/datasets/{ds}/events/{event}/instances?page&size` | `Page<RenderedInstance>` |
//! | GET | `/api/v1/datasets/{ds}/triggers/{word}` | `TriggerSummary` |
//! | GET | `/api/v1/datasets/{ds}/triggers/{word}/instances?event=&page&size` | `Page<RenderedInstance>` |
//! | GET | `/api/v1/datasets/{ds}/stats/sparsity?k=` | `SparsityReport` |
//! | GET | `/api/v1/datasets/{ds}/stats/dominance?ratio=&k=` | `DominanceReport` |
//! | GET | `/api/v1/datasets/{ds}/review-candidates?category=&page&size` | `Page<ReviewCandidate>` |
//! | POST | `/api/v1/annotate` | `AnnotateResponse` |
//!
//! Paged responses also carry an `X-Total-Count` header. Every error body is
//! a single [`ApiError`].

mod api;
mod config;
pub mod payload;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use axum::http::{header, HeaderValue, Method};
use axum::Router;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::{ServeDir, ServeFile};

use crate::analytics::{flag_review_candidates, AnalyticsConfig, ReviewCandidate};
use crate::annotator::{train_lexicon, LexiconModel, Thresholds};
use crate::error::{Error, Result};
use crate::index::Snapshot;

pub use api::{ApiError, ErrorCode, TOTAL_COUNT_HEADER};
pub use config::{DatasetConfig, ServiceConfig};

pub struct LoadedDataset {
    pub name: String,
    pub snapshot: Snapshot,
    pub model: LexiconModel,
    review: OnceLock<Vec<ReviewCandidate>>,
}

impl LoadedDataset {
    /// Uses `model` when given, otherwise trains a lexicon from the snapshot.
    pub fn new(name: impl Into<String>, snapshot: Snapshot, model: Option<LexiconModel>) -> Result<LoadedDataset> {
        let model = match model {
            Some(m) => m,
            None => train_lexicon(&snapshot.index, Thresholds::default())?,
        };
        Ok(LoadedDataset {
            name: name.into(),
            snapshot,
            model,
            review: OnceLock::new(),
        })
    }

    /// Review candidates under the default analytics configuration, computed once.
    pub fn review_candidates(&self) -> &[ReviewCandidate] {
        self.review.get_or_init(|| {
            flag_review_candidates(&self.snapshot.index, &self.snapshot.corpus, &AnalyticsConfig::default())
        })
    }
}

#[derive(Default)]
pub struct AppState {
    pub datasets: BTreeMap<String, Arc<LoadedDataset>>,
}

impl AppState {
    pub fn new(datasets: impl IntoIterator<Item = LoadedDataset>) -> Result<AppState> {
        let mut map = BTreeMap::new();
        for d in datasets {
            if map.contains_key(&d.name) {
                return Err(Error::Config(format!("dataset {:?} configured twice", d.name)));
            }
            map.insert(d.name.clone(), Arc::new(d));
        }
        Ok(AppState { datasets: map })
    }

    pub fn from_config(config: &ServiceConfig) -> Result<AppState> {
        let default_model = config.default_model.as_ref().map(LexiconModel::load).transpose()?;
        let mut loaded = Vec::new();
        for d in &config.datasets {
            let snapshot = Snapshot::load(&d.snapshot)?;
            let model = match &d.model {
                Some(path) => Some(LexiconModel::load(path)?),
                None => default_model.clone(),
            };
            let name = d.name.clone().unwrap_or_else(|| snapshot.name().to_owned());
            tracing::info!(dataset = %name, path = %d.snapshot.display(), "loaded snapshot");
            loaded.push(LoadedDataset::new(name, snapshot, model)?);
        }
        AppState::new(loaded)
    }

    pub fn dataset(&self, name: &str) -> Option<&Arc<LoadedDataset>> {
        self.datasets.get(name)
    }
}

fn cors(origins: &[String]) -> Result<CorsLayer> {
    let layer = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE])
        .expose_headers([header::HeaderName::from_static(TOTAL_COUNT_HEADER)]);
    if origins.iter().any(|o| o == "*") {
        return Ok(layer.allow_origin(Any));
    }
    let list = origins
        .iter()
        .map(|o| HeaderValue::from_str(o).map_err(|_| Error::Config(format!("bad CORS origin {o:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(layer.allow_origin(AllowOrigin::list(list)))
}

/// The complete application: API routes, CORS and optional static UI files.
pub fn app(state: AppState, config: &ServiceConfig) -> Result<Router> {
    let mut router = api::router(Arc::new(state)).layer(cors(&config.cors_origins)?);
    if let Some(dir) = &config.static_dir {
        let index = ServeFile::new(dir.join("index.html"));
        router = router.fallback_service(ServeDir::new(dir).fallback(index));
    }
    Ok(router)
}

/// Loads every configured dataset and serves until Ctrl-C.
pub async fn serve(config: ServiceConfig) -> Result<()> {
    let state = AppState::from_config(&config)?;
    let router = app(state, &config)?;
    let listener = tokio::net::TcpListener::bind(&config.listen)
        .await
        .map_err(|e| Error::io(config.listen.clone(), e))?;
    tracing::info!(listen = %config.listen, "serving /api/v1");
    axum::serve(listener, router)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| Error::io(config.listen.clone(), e))
}
