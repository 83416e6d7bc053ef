use std::net::SocketAddr;

use anyhow::Context;
use tracing_subscriber::EnvFilter;

/// Listens on the address given as the first argument, `PLDS_ADDR`, or 127.0.0.1:8080.
#[tokio::main]
async fn main() -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let addr: SocketAddr = std::env::args()
        .nth(1)
        .or_else(|| std::env::var("PLDS_ADDR").ok())
        .unwrap_or_else(|| "127.0.0.1:8080".into())
        .parse()
        .context("invalid listen address")?;
    let listener = tokio::net::TcpListener::bind(addr).await.with_context(|| format!("binding {addr}"))?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, service::router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
