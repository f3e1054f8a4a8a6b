use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use dyad_core::{GameConfigDoc, GameState, TranscriptEntry};
use serde::{Deserialize, Serialize};
use tokio::sync::RwLock as SessionLock;

/// One session. Its lock queues requests fairly, so mutations of one game
/// apply in arrival order while reads may overlap.
pub struct Session {
    pub game: GameState,
    pub created: u64,
}

pub type SessionHandle = Arc<SessionLock<Session>>;

/// In-memory game sessions. When more than `capacity` games exist, the
/// oldest is evicted.
pub struct Store {
    games: RwLock<HashMap<String, SessionHandle>>,
    next: AtomicU64,
    capacity: usize,
}

#[derive(Serialize, Deserialize)]
pub struct SavedGame {
    pub id: String,
    pub created: u64,
    pub config: GameConfigDoc,
    pub transcript: Vec<TranscriptEntry>,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl Store {
    pub fn new(capacity: usize) -> Store {
        Store {
            games: RwLock::new(HashMap::new()),
            next: AtomicU64::new(1),
            capacity: capacity.max(1),
        }
    }

    pub fn insert(&self, game: GameState) -> String {
        let id = format!("g{}", self.next.fetch_add(1, Ordering::Relaxed));
        self.put(id.clone(), game, now());
        id
    }

    fn put(&self, id: String, game: GameState, created: u64) {
        let mut games = self.games.write().expect("store lock");
        if games.len() >= self.capacity {
            let oldest = games
                .iter()
                .min_by_key(|(k, s)| {
                    // A busy session is in use, so it is not the one to drop.
                    let created = s.try_read().map(|s| s.created).unwrap_or(u64::MAX);
                    (
                        created,
                        k.trim_start_matches('g').parse::<u64>().unwrap_or(u64::MAX),
                    )
                })
                .map(|(k, _)| k.clone());
            if let Some(k) = oldest {
                games.remove(&k);
            }
        }
        games.insert(id, Arc::new(SessionLock::new(Session { game, created })));
    }

    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        self.games.read().expect("store lock").get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.games.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .games
            .read()
            .expect("store lock")
            .keys()
            .cloned()
            .collect();
        ids.sort();
        ids
    }

    pub fn export(&self) -> Vec<SavedGame> {
        let games = self.games.read().expect("store lock");
        let mut out: Vec<SavedGame> = games
            .iter()
            .filter_map(|(id, s)| {
                let s = s.try_read().ok()?;
                Some(SavedGame {
                    id: id.clone(),
                    created: s.created,
                    config: s.game.config().to_doc(),
                    transcript: s.game.transcript().to_vec(),
                })
            })
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_vec_pretty(&self.export())?;
        std::fs::write(path, json)
    }

    /// Replay every saved game; games that no longer replay are skipped.
    pub fn load(&self, path: &Path) -> std::io::Result<usize> {
        let saved: Vec<SavedGame> = serde_json::from_slice(&std::fs::read(path)?)?;
        let mut restored = 0;
        for s in saved {
            let Ok(config) = s.config.to_config() else {
                continue;
            };
            let Ok(game) = GameState::replay(config, &s.transcript) else {
                continue;
            };
            if let Some(n) = s.id.strip_prefix('g').and_then(|n| n.parse::<u64>().ok()) {
                self.next.fetch_max(n + 1, Ordering::Relaxed);
            }
            self.put(s.id, game, s.created);
            restored += 1;
        }
        Ok(restored)
    }
}
