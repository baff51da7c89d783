//! HTTP endpoints. Every body is JSON; every error is
//! `{"error": {"code", "message"}}` with a 4xx or 5xx status.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use horseshoe::cx::c;
use horseshoe::henon::HenonParams;
use log::{info, warn};
use serde::Serialize;
use tokio::sync::Semaphore;

use crate::cache::ScanCache;
use crate::config::Config;
use crate::jobs::JobTable;
use crate::ops::{self, LoopRequest, ScanRequest, ServiceError};

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self.body())).into_response()
    }
}

#[derive(Clone)]
pub struct AppState {
    pub config: Arc<Config>,
    pub jobs: Arc<JobTable>,
    pub cache: Option<ScanCache>,
    pool: Arc<rayon::ThreadPool>,
    running: Arc<Semaphore>,
}

impl AppState {
    pub fn new(config: Config) -> std::io::Result<Self> {
        let cache = match &config.cache_dir {
            Some(dir) => Some(ScanCache::open(
                dir,
                config.cache_max_entries,
                Duration::from_secs(config.cache_max_age_secs),
            )?),
            None => None,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .thread_name(|i| format!("scan-{i}"))
            .build()
            .map_err(std::io::Error::other)?;
        Ok(Self {
            running: Arc::new(Semaphore::new(config.concurrent_jobs.max(1))),
            config: Arc::new(config),
            jobs: Arc::new(JobTable::new()),
            cache,
            pool: Arc::new(pool),
        })
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/classify", get(classify))
        .route("/api/codes", get(codes))
        .route("/api/scan", post(scan))
        .route("/api/job/{id}", get(job))
        .route("/api/job/{id}/payload", get(payload))
        .route("/api/tiles", get(tiles))
        .route("/api/loop", post(run_loop))
        .fallback(|| async { ServiceError::NotFound("no such endpoint".into()) })
        .with_state(state)
}

type Params = Result<Query<HashMap<String, String>>, QueryRejection>;

fn query(q: Params) -> Result<HashMap<String, String>, ServiceError> {
    q.map(|Query(m)| m)
        .map_err(|e| ServiceError::BadRequest(e.body_text()))
}

fn number<T: std::str::FromStr>(
    q: &HashMap<String, String>,
    key: &str,
    default: Option<T>,
) -> Result<T, ServiceError> {
    match q.get(key) {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| ServiceError::BadRequest(format!("bad value for {key}: {v:?}"))),
        None => default.ok_or_else(|| ServiceError::BadRequest(format!("missing query parameter {key}"))),
    }
}

fn params(q: &HashMap<String, String>) -> Result<HenonParams, ServiceError> {
    let v = [
        number(q, "are", None)?,
        number(q, "aim", Some(0.0))?,
        number(q, "bre", None)?,
        number(q, "bim", Some(0.0))?,
    ];
    if v.iter().any(|x: &f64| !x.is_finite()) {
        return Err(ServiceError::Invalid("parameters must be finite".into()));
    }
    Ok(HenonParams::new(c(v[0], v[1]), c(v[2], v[3])))
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ServiceError> + Send + 'static,
) -> Result<T, ServiceError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ServiceError::Internal(format!("worker failed: {e}")))?
}

fn json<T: Serialize>(status: StatusCode, value: &T) -> Response {
    (status, Json(value)).into_response()
}

async fn classify(State(st): State<AppState>, q: Params) -> Result<Response, ServiceError> {
    let q = query(q)?;
    let p = params(&q)?;
    let n_max = number(&q, "n_max", Some(st.config.n_max))?;
    let r = blocking(move || ops::classify(p, n_max)).await?;
    Ok(json(StatusCode::OK, &r))
}

async fn codes(q: Params) -> Result<Response, ServiceError> {
    let q = query(q)?;
    let p = params(&q)?;
    let n = match q.get("N") {
        Some(_) => number(&q, "N", None)?,
        None => number(&q, "n", None)?,
    };
    let r = blocking(move || ops::codes(p, n)).await?;
    Ok(json(StatusCode::OK, &r))
}

async fn run_loop(State(st): State<AppState>, body: Bytes) -> Result<Response, ServiceError> {
    let text = std::str::from_utf8(&body)
        .map_err(|_| ServiceError::BadRequest("body is not UTF-8".into()))?;
    let req = LoopRequest::from_json(text)?;
    let default_n = st.config.loop_n;
    let r = blocking(move || ops::run_loop(&req, default_n)).await?;
    Ok(json(StatusCode::OK, &r))
}

async fn scan(State(st): State<AppState>, body: Bytes) -> Result<Response, ServiceError> {
    let req: ScanRequest = serde_json::from_slice(&body)
        .map_err(|e| ServiceError::BadRequest(format!("scan request: {e}")))?;
    let window = req.window(st.config.n_max)?;
    let id = st.jobs.create(window.clone());
    let cached = match st.cache.clone() {
        Some(cache) => blocking(move || Ok(cache.lookup(&window))).await?,
        None => None,
    };
    if let Some((grid, bytes)) = cached {
        info!("job {id}: cache hit");
        st.jobs.complete_from_cache(id, grid, &bytes);
    } else {
        let st2 = st.clone();
        tokio::spawn(async move {
            let Ok(_permit) = st2.running.clone().acquire_owned().await else {
                return;
            };
            let (jobs, pool, cache) = (st2.jobs.clone(), st2.pool.clone(), st2.cache.clone());
            let band = st2.config.band_rows;
            let done = tokio::task::spawn_blocking(move || {
                pool.install(|| jobs.run(id, band, cache.as_ref()))
            })
            .await;
            if let Err(e) = done {
                warn!("job {id} panicked: {e}");
            }
        });
    }
    let status = st
        .jobs
        .status(id)
        .ok_or_else(|| ServiceError::Internal("job vanished".into()))?;
    Ok(json(StatusCode::ACCEPTED, &status))
}

fn job_id(s: &str) -> Result<u64, ServiceError> {
    s.parse()
        .map_err(|_| ServiceError::BadRequest(format!("bad job id {s:?}")))
}

async fn job(State(st): State<AppState>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    let id = job_id(&id)?;
    let s = st
        .jobs
        .status(id)
        .ok_or_else(|| ServiceError::NotFound(format!("no job {id}")))?;
    Ok(json(StatusCode::OK, &s))
}

/// The stored tile payload of a finished job, byte for byte.
async fn payload(State(st): State<AppState>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    let bytes = st.jobs.payload(job_id(&id)?)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], bytes.to_vec()).into_response())
}

async fn tiles(State(st): State<AppState>, q: Params) -> Result<Response, ServiceError> {
    let q = query(q)?;
    let id = job_id(q.get("job").ok_or_else(|| ServiceError::BadRequest("missing query parameter job".into()))?)?;
    let t = st.jobs.tiles(id, q.get("rect").map(String::as_str))?;
    Ok(json(StatusCode::OK, &t))
}

/// Bind and serve until interrupted.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let addr = format!("{}:{}", config.host, config.port);
    let state = AppState::new(config)?;
    let listener = tokio::net::TcpListener::bind(&addr).await?;
    info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
