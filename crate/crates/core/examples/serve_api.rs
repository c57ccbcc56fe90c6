//! Serve the trigger-table fixture over HTTP.
//!
//!     cargo run --example serve_api -- 127.0.0.1:8080
//!     curl localhost:8080/api/v1/datasets/table/triggers/storm

use edx::fixtures::trigger_table_corpus;
use edx::index::Snapshot;
use edx::service::{app, AppState, LoadedDataset, ServiceConfig};

#[tokio::main]
async fn main() -> edx::Result<()> {
    let listen = std::env::args().nth(1).unwrap_or_else(|| "127.0.0.1:8080".into());
    let config = ServiceConfig::from_toml(&format!("listen = {listen:?}\ncors_origins = [\"*\"]"))?;

    let snapshot = Snapshot::build(trigger_table_corpus())?;
    let state = AppState::new([LoadedDataset::new("table", snapshot, None)?])?;
    let router = app(state, &config)?;

    let listener = tokio::net::TcpListener::bind(&config.listen)
        .await
        .map_err(|e| edx::Error::io(&config.listen, e))?;
    println!("listening on http://{}/api/v1/datasets", config.listen);
    axum::serve(listener, router).await.map_err(|e| edx::Error::io(&config.listen, e))
}
