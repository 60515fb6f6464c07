//! In-memory game sessions over JSON/HTTP.
//!
//! | route                        | body            | reply                 |
//! |------------------------------|-----------------|-----------------------|
//! | `POST /game`                 | instance        | view of a new session |
//! | `GET /game/:id`              |                 | view                  |
//! | `POST /game/:id/move`        | `{"v","c"}`     | view                  |
//! | `POST /game/:id/hint?mode=`  |                 | next move + estimate  |
//! | `POST /game/:id/undo`        |                 | view                  |
//!
//! Unknown sessions answer 404, illegal moves 422.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use floodlab_core::solver::{
    approx_free, greedy_fixed, solve_fixed_exact, solve_free_exact, SearchBudget, SolveStatus,
};
use floodlab_core::{ColoredInstance, Mode, Move, QuotientState, Solution, Vertex};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;
use tokio::sync::{Mutex, Semaphore};

use crate::cli::solve_error;
use crate::input::{instance_from_value, CliError};

pub const BUDGET_ENV: &str = "FLOODLAB_BUDGET_MS";
const DEFAULT_BUDGET_MS: u64 = 2000;

#[derive(Clone, Debug)]
pub struct ServerConfig {
    /// Time limit of one exact hint search.
    pub hint_budget: Duration,
    /// Concurrent solver calls.
    pub workers: usize,
}

impl ServerConfig {
    pub fn from_env() -> Self {
        let ms = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET_MS);
        ServerConfig {
            hint_budget: Duration::from_millis(ms),
            workers: std::thread::available_parallelism().map_or(2, |n| n.get()),
        }
    }
}

struct Session {
    instance: ColoredInstance,
    mode: Mode,
    pivot: Option<Vertex>,
    /// `states[i]` is the board after `moves[..i]`.
    states: Vec<QuotientState>,
    moves: Vec<Move>,
}

impl Session {
    fn current(&self) -> &QuotientState {
        self.states
            .last()
            .expect("the initial state is never popped")
    }
}

struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    config: ServerConfig,
    workers: Arc<Semaphore>,
}

type Shared = Arc<AppState>;

struct ApiError {
    status: StatusCode,
    code: String,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn unprocessable(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, message)
    }
}

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        ApiError::unprocessable(&e.code, e.message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"error": {"code": self.code, "message": self.message}});
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

pub fn router(config: ServerConfig) -> Router {
    let state = Arc::new(AppState {
        sessions: RwLock::new(HashMap::new()),
        workers: Arc::new(Semaphore::new(config.workers.max(1))),
        config,
    });
    Router::new()
        .route("/game", post(create))
        .route("/game/:id", get(show))
        .route("/game/:id/move", post(play))
        .route("/game/:id/hint", post(hint))
        .route("/game/:id/undo", post(undo))
        .with_state(state)
}

pub async fn serve(listener: TcpListener, config: ServerConfig) -> std::io::Result<()> {
    axum::serve(listener, router(config)).await
}

/// Binds, prints `{"listening": addr}` on stdout and serves until killed.
pub fn serve_blocking(host: &str, port: u16) -> std::io::Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = TcpListener::bind((host, port)).await?;
        let addr = listener.local_addr()?;
        println!("{}", json!({"listening": addr.to_string()}));
        eprintln!("serving on http://{addr}");
        serve(listener, ServerConfig::from_env()).await
    })
}

fn body_json(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "malformed-json", e.to_string()))
}

fn lookup(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    let sessions = state.sessions.read().expect("session map poisoned");
    sessions
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown-session", id.to_string()))
}

fn view(id: &str, s: &Session) -> Value {
    let cur = s.current();
    let components: Vec<Value> = (0..cur.component_count())
        .map(|c| {
            let mut vs = cur.component_members(c).to_vec();
            vs.sort_unstable();
            json!({"id": c, "color": cur.component_color(c), "vertices": vs})
        })
        .collect();
    let edges: Vec<(Vertex, Vertex)> = s.instance.graph().edges().collect();
    json!({
        "id": id,
        "mode": s.mode,
        "pivot": s.pivot,
        "pivot_component": s.pivot.map(|p| cur.component_of(p)),
        "vertices": cur.vertex_count(),
        "edges": edges,
        "c_max": cur.c_max(),
        "coloring": cur.coloring(),
        "components": components,
        "moves": s.moves,
        "move_count": s.moves.len(),
        "flooded": cur.is_flooded(),
    })
}

/// Body: an instance (bare or under `"instance"`), optionally with
/// `"mode"` and `"pivot"` next to it.
async fn create(State(app): State<Shared>, body: Bytes) -> ApiResult {
    let value = body_json(&body)?;
    let mode = match value.get("mode") {
        None => Mode::Free,
        Some(m) => match serde_json::from_value::<Mode>(m.clone()) {
            Ok(m @ (Mode::Free | Mode::Fixed)) => m,
            _ => {
                return Err(ApiError::unprocessable(
                    "invalid-mode",
                    "mode must be free or fixed",
                ))
            }
        },
    };
    let wrapped = value.get("instance").is_some();
    let pivot_override = match value.get("pivot") {
        Some(p) if wrapped => Some(
            serde_json::from_value::<Vertex>(p.clone())
                .map_err(|e| ApiError::unprocessable("invalid-pivot", e.to_string()))?,
        ),
        _ => None,
    };
    let mut instance = instance_from_value(value).map_err(CliError::from)?.instance;
    if let Some(p) = pivot_override {
        instance = instance
            .with_pivot(p)
            .map_err(|e| ApiError::unprocessable("invalid-pivot", e.to_string()))?;
    }
    let pivot = instance.pivot();
    if mode == Mode::Fixed && pivot.is_none() {
        return Err(ApiError::unprocessable(
            "pivot-required",
            "fixed mode needs a pivot",
        ));
    }
    let session = Session {
        states: vec![instance.initial_state()],
        instance,
        mode,
        pivot,
        moves: Vec::new(),
    };
    let id = uuid::Uuid::new_v4().simple().to_string();
    let reply = view(&id, &session);
    app.sessions
        .write()
        .expect("session map poisoned")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok(Json(reply))
}

async fn show(State(app): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let session = lookup(&app, &id)?;
    let s = session.lock().await;
    Ok(Json(view(&id, &s)))
}

/// In fixed mode any vertex of the pivot component may be clicked; the
/// move is recorded as played at the pivot.
async fn play(State(app): State<Shared>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    let session = lookup(&app, &id)?;
    let value = body_json(&body)?;
    let mv: Move = serde_json::from_value(value)
        .map_err(|e| ApiError::unprocessable("invalid-move", e.to_string()))?;
    let mut s = session.lock().await;
    let cur = s.current();
    if mv.vertex >= cur.vertex_count() {
        return Err(ApiError::unprocessable(
            "illegal-move",
            format!("vertex {} is not on the board", mv.vertex),
        ));
    }
    let mv = match (s.mode, s.pivot) {
        (Mode::Fixed, Some(p)) => {
            if cur.component_of(mv.vertex) != cur.component_of(p) {
                return Err(ApiError::unprocessable(
                    "illegal-move",
                    format!(
                        "fixed mode: vertex {} is outside the pivot component",
                        mv.vertex
                    ),
                ));
            }
            Move::new(p, mv.color)
        }
        _ => mv,
    };
    let next = cur
        .apply_move(mv)
        .map_err(|e| ApiError::unprocessable("illegal-move", e.to_string()))?;
    s.states.push(next);
    s.moves.push(mv);
    Ok(Json(view(&id, &s)))
}

async fn undo(State(app): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let session = lookup(&app, &id)?;
    let mut s = session.lock().await;
    if s.moves.pop().is_none() {
        return Err(ApiError::unprocessable(
            "nothing-to-undo",
            "no move has been played",
        ));
    }
    s.states.pop();
    Ok(Json(view(&id, &s)))
}

#[derive(Deserialize)]
struct HintQuery {
    mode: Option<String>,
}

async fn hint(
    State(app): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<HintQuery>,
) -> ApiResult {
    let session = lookup(&app, &id)?;
    let (board, session_mode, pivot) = {
        let s = session.lock().await;
        (s.current().clone(), s.mode, s.pivot)
    };
    let mode = match q.mode.as_deref() {
        None => session_mode,
        Some("free") => Mode::Free,
        Some("fixed") => Mode::Fixed,
        Some(other) => {
            return Err(ApiError::unprocessable(
                "invalid-mode",
                format!("unknown hint mode {other:?}"),
            ))
        }
    };
    let pivot = match mode {
        Mode::Fixed => Some(pivot.ok_or_else(|| {
            ApiError::unprocessable("pivot-required", "fixed hints need a session pivot")
        })?),
        _ => None,
    };
    let budget = SearchBudget::time(app.config.hint_budget);
    let permit = app
        .workers
        .clone()
        .acquire_owned()
        .await
        .expect("worker pool is never closed");
    let out = tokio::task::spawn_blocking(move || {
        let _permit = permit;
        compute_hint(&board, mode, pivot, &budget)
    })
    .await
    .map_err(|e| {
        ApiError::new(
            StatusCode::INTERNAL_SERVER_ERROR,
            "worker-failed",
            e.to_string(),
        )
    })??;
    Ok(Json(out))
}

fn compute_hint(
    board: &QuotientState,
    mode: Mode,
    pivot: Option<Vertex>,
    budget: &SearchBudget,
) -> Result<Value, ApiError> {
    let inst = board.to_instance(pivot);
    let result = match pivot {
        Some(p) => solve_fixed_exact(&inst, p, budget),
        None => solve_free_exact(&inst, budget),
    }
    .map_err(|e| ApiError::from(solve_error(e)))?;
    let (sol, exact): (Solution, bool) = if result.status == SolveStatus::Optimal {
        let sol = result
            .solution
            .clone()
            .expect("optimal results carry a solution");
        (sol, true)
    } else {
        let approx = match pivot {
            Some(p) => greedy_fixed(&inst, p),
            None => approx_free(&inst),
        };
        (approx.map_err(|e| ApiError::from(solve_error(e)))?, false)
    };
    let first = sol.plain_moves().and_then(|m| m.first().copied());
    Ok(json!({
        "mode": mode,
        "move": first,
        "remaining": sol.len(),
        "lower_bound": result.lower_bound,
        "status": result.status,
        "exact": exact,
    }))
}
