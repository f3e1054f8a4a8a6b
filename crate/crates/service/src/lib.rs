//! HTTP sessions for the colouring game.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | `POST` | `/games` | game config | `201 {id, state}` |
//! | `GET` | `/games` | | `{games: [id…]}` |
//! | `GET` | `/games/{id}` | | state |
//! | `POST` | `/games/{id}/moves` | `{added}` or `{collection}` | state, or `409` |
//! | `POST` | `/games/{id}/colourings` | `{assignments}` | state, or `409` |
//! | `GET` | `/games/{id}/hint` | | `{added: […] \| null}` |
//! | `POST` | `/games/{id}/concede` | `{seat: "A" \| "B"}` | state |
//! | `GET` | `/health` | | `{status: "ok"}` |
//!
//! Engine seats move as soon as it is their turn, so a reply always shows
//! the game waiting for a human (or finished).

mod error;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use dyad_core::{
    ColouredInterval, DyadicInterval, Error, GameConfigDoc, GameSnapshot, GameState, IntervalSet,
    MoveA, Player, Seat, Status,
};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::{Any, CorsLayer};

pub use error::ApiError;
pub use store::{SavedGame, Session, Store};

pub const DEFAULT_PORT: u16 = 8737;
pub const DEFAULT_CAPACITY: usize = 1024;

type AppState = Arc<Store>;
type ApiResult<T> = Result<T, ApiError>;

#[derive(Serialize)]
pub struct Created {
    pub id: String,
    pub state: GameSnapshot,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveBody {
    #[serde(default)]
    added: Option<Vec<DyadicInterval>>,
    #[serde(default)]
    collection: Option<Vec<ColouredInterval>>,
}

#[derive(Deserialize)]
struct ColouringBody {
    assignments: Vec<ColouredInterval>,
}

#[derive(Deserialize)]
struct ConcedeBody {
    seat: Player,
}

#[derive(Serialize)]
struct Hint {
    added: Option<Vec<DyadicInterval>>,
}

pub fn router(store: Arc<Store>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods(Any)
        .allow_headers(Any);
    Router::new()
        .route("/health", get(health))
        .route("/games", post(create).get(list))
        .route("/games/{id}", get(fetch))
        .route("/games/{id}/moves", post(play_move))
        .route("/games/{id}/colourings", post(submit_colouring))
        .route("/games/{id}/hint", get(hint))
        .route("/games/{id}/concede", post(concede))
        .layer(cors)
        .with_state(store)
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::unprocessable(format!("malformed body: {e}")))
}

/// Let engine seats play until a human is to move or the game ends.
pub fn advance(game: &mut GameState) -> Result<(), Error> {
    loop {
        let seats = (game.config().seat_a, game.config().seat_b);
        match (game.status(), seats) {
            (Status::AwaitingA, (Seat::Engine, _)) => {
                let mut rng = StdRng::seed_from_u64(u64::from(game.stage()));
                match game.engine_move_a(&mut rng) {
                    Some(mv) => game.apply_move_a(&mv)?,
                    None => game.concede(Player::A)?,
                }
            }
            (Status::AwaitingB, (_, Seat::Engine)) => game.respond_b()?,
            _ => return Ok(()),
        }
    }
}

/// Run `op` on the game under its write lock, off the async workers.
async fn with_game<T, F>(store: &Store, id: &str, op: F) -> ApiResult<T>
where
    T: Send + 'static,
    F: FnOnce(&mut GameState) -> ApiResult<T> + Send + 'static,
{
    let handle = store.get(id).ok_or_else(|| ApiError::not_found(id))?;
    let mut session = handle.write_owned().await;
    tokio::task::spawn_blocking(move || op(&mut session.game))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

/// As [`with_game`], under a shared read lock.
async fn read_game<T, F>(store: &Store, id: &str, op: F) -> ApiResult<T>
where
    T: Send + 'static,
    F: FnOnce(&GameState) -> ApiResult<T> + Send + 'static,
{
    let handle = store.get(id).ok_or_else(|| ApiError::not_found(id))?;
    let session = handle.read_owned().await;
    tokio::task::spawn_blocking(move || op(&session.game))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

async fn list(State(store): State<AppState>) -> Json<serde_json::Value> {
    Json(serde_json::json!({ "games": store.ids() }))
}

async fn create(
    State(store): State<AppState>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<Created>)> {
    let doc: GameConfigDoc = parse(&body)?;
    let game = tokio::task::spawn_blocking(move || -> ApiResult<GameState> {
        let mut game = GameState::new_game(doc.to_config()?)?;
        advance(&mut game)?;
        Ok(game)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    let state = game.snapshot();
    let id = store.insert(game);
    Ok((StatusCode::CREATED, Json(Created { id, state })))
}

async fn fetch(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<GameSnapshot>> {
    read_game(&store, &id, |g| Ok(g.snapshot())).await.map(Json)
}

async fn play_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<GameSnapshot>> {
    let body: MoveBody = parse(&body)?;
    with_game(&store, &id, move |g| {
        let j = g.j();
        let mv = match (body.added, body.collection) {
            (Some(added), None) => MoveA {
                added: IntervalSet::from_intervals(j, added)?,
            },
            (None, Some(list)) => {
                let ivs = list
                    .iter()
                    .map(ColouredInterval::interval)
                    .collect::<Result<Vec<_>, _>>()?;
                g.move_from_collection(&IntervalSet::from_intervals(j, ivs)?)?
            }
            _ => {
                return Err(ApiError::unprocessable(
                    "give exactly one of \"added\" and \"collection\"",
                ))
            }
        };
        g.apply_move_a(&mv)?;
        advance(g)?;
        Ok(g.snapshot())
    })
    .await
    .map(Json)
}

async fn submit_colouring(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<GameSnapshot>> {
    let body: ColouringBody = parse(&body)?;
    with_game(&store, &id, move |g| {
        let assignments = body
            .assignments
            .iter()
            .map(|ci| {
                let colour = ci
                    .colour
                    .ok_or_else(|| ApiError::unprocessable("every assignment needs a colour"))?;
                Ok((ci.interval()?, colour))
            })
            .collect::<ApiResult<Vec<_>>>()?;
        g.submit_colouring(&assignments)?;
        advance(g)?;
        Ok(g.snapshot())
    })
    .await
    .map(Json)
}

async fn hint(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<serde_json::Value>> {
    let hint = read_game(&store, &id, |g| {
        Ok(Hint {
            added: g.hint_a().map(|mv| mv.added.iter().collect()),
        })
    })
    .await?;
    Ok(Json(serde_json::to_value(hint).expect("serializable")))
}

async fn concede(
    State(store): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<GameSnapshot>> {
    let body: ConcedeBody = parse(&body)?;
    with_game(&store, &id, move |g| {
        g.concede(body.seat)?;
        Ok(g.snapshot())
    })
    .await
    .map(Json)
}

pub struct ServiceConfig {
    pub addr: SocketAddr,
    /// Games are restored from and saved to this file.
    pub snapshot: Option<PathBuf>,
    pub capacity: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            addr: SocketAddr::from(([127, 0, 0, 1], DEFAULT_PORT)),
            snapshot: None,
            capacity: DEFAULT_CAPACITY,
        }
    }
}

/// Serve until Ctrl-C (or SIGTERM), then write the snapshot if configured.
pub async fn serve(config: ServiceConfig) -> std::io::Result<()> {
    let store = Arc::new(Store::new(config.capacity));
    if let Some(path) = &config.snapshot {
        if path.exists() {
            let n = store.load(path)?;
            eprintln!("restored {n} game(s) from {}", path.display());
        }
    }
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(store.clone()))
        .with_graceful_shutdown(shutdown_signal())
        .await?;
    if let Some(path) = &config.snapshot {
        store.save(path)?;
        eprintln!("saved {} game(s) to {}", store.len(), path.display());
    }
    Ok(())
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}
