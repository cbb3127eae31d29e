//! JSON-over-HTTP game service.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/games` | [`CreateGame`] | `{id, state}` |
//! | GET | `/games/{id}` | | state |
//! | POST | `/games/{id}/move` | [`Move`] | `{engine_moves, state}` |
//! | GET | `/games/{id}/hint` | | [`Hint`] |
//! | DELETE | `/games/{id}` | | `{deleted: id}` |
//!
//! Errors are `{"error": reason}` with status 400 (illegal move or bad
//! request), 404 (unknown session), 409 (move out of turn or game over), 413
//! (graph over the exact engine's cap).
//!
//! With a persistence file, every accepted create, move and delete is
//! appended as one JSON line; on start the file is replayed.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::session::{CreateGame, Move, Session, SessionError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum Record {
    Create { id: String, game: CreateGame },
    Move { id: String, #[serde(rename = "move")] mv: Move },
    Delete { id: String },
}

pub struct Store {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    next: AtomicU64,
    log: Option<Mutex<File>>,
}

impl SessionError {
    fn status(&self) -> StatusCode {
        match self {
            SessionError::BadRequest(_) => StatusCode::BAD_REQUEST,
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::OutOfTurn(_) => StatusCode::CONFLICT,
            SessionError::TooLarge(_) => StatusCode::PAYLOAD_TOO_LARGE,
            SessionError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for SessionError {
    fn into_response(self) -> Response {
        (self.status(), Json(json!({ "error": self.to_string() }))).into_response()
    }
}

type Reply = Result<Json<serde_json::Value>, SessionError>;

impl Store {
    pub fn in_memory() -> Self {
        Store { sessions: Mutex::new(HashMap::new()), next: AtomicU64::new(1), log: None }
    }

    /// Opens (or creates) a JSON-lines log and replays it.
    pub fn persistent(path: &Path) -> Result<Self, String> {
        let mut store = Store::in_memory();
        if path.exists() {
            let f = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| e.to_string())?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", i + 1))?;
                store.replay(rec).map_err(|e| format!("line {}: {e}", i + 1))?;
            }
        }
        let f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| format!("{}: {e}", path.display()))?;
        store.log = Some(Mutex::new(f));
        Ok(store)
    }

    fn replay(&self, rec: Record) -> Result<(), SessionError> {
        match rec {
            Record::Create { id, game } => {
                if let Some(k) = id.strip_prefix('g').and_then(|k| k.parse::<u64>().ok()) {
                    self.next.fetch_max(k + 1, Ordering::SeqCst);
                }
                let s = Session::new(id.clone(), game)?;
                self.sessions.lock().expect("lock").insert(id, Arc::new(Mutex::new(s)));
            }
            Record::Move { id, mv } => {
                self.get(&id)?.lock().expect("lock").apply(mv)?;
            }
            Record::Delete { id } => {
                self.sessions.lock().expect("lock").remove(&id);
            }
        }
        Ok(())
    }

    fn append(&self, rec: &Record) -> Result<(), SessionError> {
        if let Some(log) = &self.log {
            let mut f = log.lock().expect("lock");
            let line = serde_json::to_string(rec).map_err(|e| SessionError::Internal(e.to_string()))?;
            writeln!(f, "{line}").and_then(|()| f.flush()).map_err(|e| SessionError::Internal(e.to_string()))?;
        }
        Ok(())
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .lock()
            .expect("lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(format!("no game with id {id:?}")))
    }

    pub fn create(&self, game: CreateGame) -> Reply {
        let id = format!("g{}", self.next.fetch_add(1, Ordering::SeqCst));
        let s = Session::new(id.clone(), game.clone())?;
        let state = serde_json::to_value(s.view()).expect("serializable");
        self.append(&Record::Create { id: id.clone(), game })?;
        self.sessions.lock().expect("lock").insert(id.clone(), Arc::new(Mutex::new(s)));
        Ok(Json(json!({ "id": id, "state": state })))
    }

    pub fn state(&self, id: &str) -> Reply {
        let s = self.get(id)?;
        let v = s.lock().expect("lock").view();
        Ok(Json(serde_json::to_value(v).expect("serializable")))
    }

    pub fn play(&self, id: &str, mv: Move) -> Reply {
        let s = self.get(id)?;
        let mut s = s.lock().expect("lock");
        let engine_moves = s.apply(mv.clone())?;
        self.append(&Record::Move { id: id.to_string(), mv })?;
        Ok(Json(json!({ "engine_moves": engine_moves, "state": s.view() })))
    }

    pub fn hint(&self, id: &str) -> Reply {
        let s = self.get(id)?;
        let h = s.lock().expect("lock").hint()?;
        Ok(Json(serde_json::to_value(h).expect("serializable")))
    }

    pub fn delete(&self, id: &str) -> Reply {
        self.get(id)?;
        self.append(&Record::Delete { id: id.to_string() })?;
        self.sessions.lock().expect("lock").remove(id);
        Ok(Json(json!({ "deleted": id })))
    }
}

async fn create(State(st): State<Arc<Store>>, body: Result<Json<CreateGame>, axum::extract::rejection::JsonRejection>) -> Reply {
    let Json(game) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    blocking(move || st.create(game)).await
}

async fn state(State(st): State<Arc<Store>>, UrlPath(id): UrlPath<String>) -> Reply {
    st.state(&id)
}

async fn play(
    State(st): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<Move>, axum::extract::rejection::JsonRejection>,
) -> Reply {
    let Json(mv) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    blocking(move || st.play(&id, mv)).await
}

async fn hint(State(st): State<Arc<Store>>, UrlPath(id): UrlPath<String>) -> Reply {
    blocking(move || st.hint(&id)).await
}

async fn delete(State(st): State<Arc<Store>>, UrlPath(id): UrlPath<String>) -> Reply {
    st.delete(&id)
}

/// Engine work can be CPU heavy; keep it off the async workers.
async fn blocking(f: impl FnOnce() -> Reply + Send + 'static) -> Reply {
    tokio::task::spawn_blocking(f).await.map_err(|e| SessionError::Internal(e.to_string()))?
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/games", post(create))
        .route("/games/{id}", get(state).delete(delete))
        .route("/games/{id}/move", post(play))
        .route("/games/{id}/hint", get(hint))
        .with_state(store)
}

pub async fn serve(port: u16, store: Arc<Store>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
