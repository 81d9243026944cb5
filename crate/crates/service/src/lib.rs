//! HTTP facade over a loaded conference corpus.
//!
//! Readers work on an immutable conference snapshot. Assignment edits are
//! serialized through one writer, persisted to disk, and only then published
//! as the new snapshot.

mod error;
mod routes;
mod state;

pub use error::ApiError;
pub use routes::router;
pub use state::{AppState, Settings};

use std::future::Future;

use tokio::net::TcpListener;

/// Serves `state` on `listener` until `shutdown` resolves.
pub async fn serve(
    listener: TcpListener,
    state: AppState,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}
