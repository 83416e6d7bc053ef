//! HTTP/JSON front end for the experiment runner.
//!
//! `POST /experiments` runs a whole experiment on an uploaded edge list.
//! `/sessions` keeps a live level structure that accepts batches one request
//! at a time and answers coreness and invariant queries between them.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use bench::{run_on_graph, Report, RunConfig};
use framework::DynamicGraph;
use graph_core::{parse_edge_list, Graph, UpdateBatch};
use plds::PldsParams;
use serde::{Deserialize, Serialize};
use static_kcore::{exact_kcore, ApproxKcore};
use tokio::net::TcpListener;
use tokio::task::JoinHandle;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl ToString) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, message: message.to_string() }
    }

    fn not_found(id: u64) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, message: format!("no session {id}") }
    }

    fn internal(message: impl ToString) -> Self {
        ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: message.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        if self.status.is_server_error() {
            tracing::error!(status = %self.status, "{}", self.message);
        } else {
            tracing::debug!(status = %self.status, "{}", self.message);
        }
        (self.status, Json(ErrorBody { error: self.message })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

/// An experiment over an edge list sent inline; `config.input` is ignored.
#[derive(Debug, Serialize, Deserialize)]
pub struct ExperimentRequest {
    pub config: RunConfig,
    pub graph: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StaticRequest {
    pub graph: String,
    /// Also run approximate peeling with this `ε′`.
    #[serde(default)]
    pub eps_prime: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StaticResponse {
    pub exact: Vec<usize>,
    pub approx: Option<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NewSession {
    pub num_vertices: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_divisor")]
    pub divisor: usize,
}

fn default_delta() -> f64 {
    RunConfig::default().delta
}

fn default_lambda() -> f64 {
    RunConfig::default().lambda
}

fn default_divisor() -> usize {
    RunConfig::default().divisor
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionInfo {
    pub id: u64,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_levels: usize,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct BatchRequest {
    #[serde(default)]
    pub insertions: Vec<(usize, usize)>,
    #[serde(default)]
    pub deletions: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BatchResponse {
    pub moves: usize,
    pub flips: usize,
    pub num_edges: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Coreness {
    pub levels: Vec<usize>,
    pub estimates: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantStatus {
    pub ok: bool,
    pub violations: Vec<String>,
}

type Session = Arc<Mutex<DynamicGraph>>;

#[derive(Default)]
struct AppState {
    sessions: Mutex<HashMap<u64, Session>>,
    next_id: AtomicU64,
}

impl AppState {
    fn session(&self, id: u64) -> Result<Session, ApiError> {
        self.sessions.lock().expect("session table poisoned").get(&id).cloned().ok_or(ApiError::not_found(id))
    }
}

type Shared = Arc<AppState>;

/// All routes over a fresh, empty session table.
pub fn router() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/experiments", post(experiment))
        .route("/static", post(static_kcore))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(session_info).delete(delete_session))
        .route("/sessions/{id}/batches", post(apply_batch))
        .route("/sessions/{id}/coreness", get(coreness))
        .route("/sessions/{id}/invariants", get(invariants))
        .with_state(Shared::default())
}

/// Serves on an already bound listener until the future is dropped or fails.
pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

/// Binds `addr` and serves in the background, returning the bound address.
pub async fn spawn(addr: SocketAddr) -> std::io::Result<(SocketAddr, JoinHandle<std::io::Result<()>>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    tracing::info!(%local, "listening");
    Ok((local, tokio::spawn(serve(listener))))
}

/// Runs CPU-bound work off the async workers.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(ApiError::internal)?
}

fn parse_graph(text: &str) -> Result<Graph, ApiError> {
    parse_edge_list(text.as_bytes()).map_err(ApiError::bad_request)
}

async fn health() -> Json<Health> {
    Json(Health { status: "ok".into(), version: env!("CARGO_PKG_VERSION").into() })
}

async fn experiment(Json(req): Json<ExperimentRequest>) -> ApiResult<Report> {
    req.config.validate().map_err(ApiError::bad_request)?;
    tracing::info!(problem = %req.config.problem, mode = %req.config.mode, "experiment");
    let report = blocking(move || {
        let graph = parse_graph(&req.graph)?;
        run_on_graph(&req.config, &graph).map_err(ApiError::bad_request)
    })
    .await?;
    Ok(Json(report))
}

async fn static_kcore(Json(req): Json<StaticRequest>) -> ApiResult<StaticResponse> {
    if let Some(e) = req.eps_prime {
        if !(e > 0.0 && e.is_finite()) {
            return Err(ApiError::bad_request("eps_prime must be positive"));
        }
    }
    let out = blocking(move || {
        let g = parse_graph(&req.graph)?;
        Ok(StaticResponse { exact: exact_kcore(&g), approx: req.eps_prime.map(|e| ApproxKcore::new(e).run(&g)) })
    })
    .await?;
    Ok(Json(out))
}

fn info(id: u64, g: &DynamicGraph) -> SessionInfo {
    SessionInfo { id, num_vertices: g.num_vertices(), num_edges: g.num_edges(), num_levels: g.plds().num_levels() }
}

async fn create_session(State(state): State<Shared>, Json(req): Json<NewSession>) -> Result<Response, ApiError> {
    let params = PldsParams::new(req.delta, req.lambda, req.divisor, req.num_vertices);
    let g = DynamicGraph::new(params, req.num_vertices).map_err(ApiError::bad_request)?;
    let id = state.next_id.fetch_add(1, Ordering::Relaxed);
    let body = info(id, &g);
    state.sessions.lock().expect("session table poisoned").insert(id, Arc::new(Mutex::new(g)));
    tracing::info!(id, n = req.num_vertices, "session created");
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn session_info(State(state): State<Shared>, Path(id): Path<u64>) -> ApiResult<SessionInfo> {
    let s = state.session(id)?;
    let g = s.lock().expect("session poisoned");
    Ok(Json(info(id, &g)))
}

async fn delete_session(State(state): State<Shared>, Path(id): Path<u64>) -> Result<StatusCode, ApiError> {
    match state.sessions.lock().expect("session table poisoned").remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT),
        None => Err(ApiError::not_found(id)),
    }
}

async fn apply_batch(
    State(state): State<Shared>,
    Path(id): Path<u64>,
    Json(req): Json<BatchRequest>,
) -> ApiResult<BatchResponse> {
    let s = state.session(id)?;
    let out = blocking(move || {
        let mut g = s.lock().expect("session poisoned");
        let batch = UpdateBatch::from_edges(&req.insertions, &req.deletions);
        let summary = g.graph_problem_update(&batch, &mut ()).map_err(ApiError::bad_request)?;
        Ok(BatchResponse { moves: summary.moves, flips: summary.flips, num_edges: g.num_edges() })
    })
    .await?;
    Ok(Json(out))
}

async fn coreness(State(state): State<Shared>, Path(id): Path<u64>) -> ApiResult<Coreness> {
    let s = state.session(id)?;
    let g = s.lock().expect("session poisoned");
    Ok(Json(Coreness { levels: g.levels().to_vec(), estimates: g.plds().coreness_estimates() }))
}

async fn invariants(State(state): State<Shared>, Path(id): Path<u64>) -> ApiResult<InvariantStatus> {
    let s = state.session(id)?;
    let violations: Vec<String> = blocking(move || {
        let g = s.lock().expect("session poisoned");
        Ok(g.plds().check_invariants().violations.iter().map(|v| v.to_string()).collect())
    })
    .await?;
    Ok(Json(InvariantStatus { ok: violations.is_empty(), violations }))
}
