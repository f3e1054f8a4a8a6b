//! The two-player growth game.
//!
//! Player A enlarges the collection, Player B colours the new intervals
//! while keeping every earlier colour. A wins as soon as B has no
//! homogeneous way to do so; B wins when the board is full, or, in the
//! restricted variant, when A has no previsible move left.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{build_counterexample, ChainSpec};
use crate::colourer::extend_colouring;
use crate::criteria::{check_homogeneous, check_previsible, Violation};
use crate::dyadic::{Colour, Colouring, DyadicInterval, HomogeneityParams, IntervalSet, Rational};
use crate::error::{Error, Result};
use crate::oracle::{oracle_extensions, OracleConfig, DEFAULT_BUDGET};
use crate::wire::ColouredInterval;

/// Previsibility checks spent by the stopping-rule search before it falls
/// back to the full complement.
pub const LEGALITY_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Seat {
    Human,
    Engine,
}

impl Seat {
    pub fn human() -> Seat {
        Seat::Human
    }

    pub fn engine() -> Seat {
        Seat::Engine
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "awaiting_A")]
    AwaitingA,
    #[serde(rename = "awaiting_B")]
    AwaitingB,
    #[serde(rename = "A_wins")]
    AWins,
    #[serde(rename = "B_wins")]
    BWins,
}

impl Status {
    pub fn is_over(self) -> bool {
        matches!(self, Status::AWins | Status::BWins)
    }

    pub fn to_move(self) -> Option<Player> {
        match self {
            Status::AwaitingA => Some(Player::A),
            Status::AwaitingB => Some(Player::B),
            _ => None,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Status::AwaitingA => "awaiting Player A",
            Status::AwaitingB => "awaiting Player B",
            Status::AWins => "the game is over (A wins)",
            Status::BWins => "the game is over (B wins)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub params: HomogeneityParams,
    pub restricted: bool,
    /// Totally coloured `C(0)`; its level is `j`.
    pub initial: Colouring,
    pub seat_a: Seat,
    pub seat_b: Seat,
    /// Set when the game replays the chain construction.
    pub chain: Option<ChainSpec>,
    /// Node-visit budget for each oracle call.
    pub budget: u64,
}

impl GameConfig {
    pub fn new(params: HomogeneityParams, initial: Colouring) -> GameConfig {
        GameConfig {
            params,
            restricted: false,
            initial,
            seat_a: Seat::Human,
            seat_b: Seat::Engine,
            chain: None,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Start from stage 0 of the chain family with `η = 1/n`.
    pub fn from_chain(spec: &ChainSpec, restricted: bool) -> Result<GameConfig> {
        let fam = build_counterexample(spec)?;
        let mut config = GameConfig::new(fam.params(), fam.forced_colouring(0));
        config.restricted = restricted;
        config.chain = Some(spec.clone());
        Ok(config)
    }

    pub fn j(&self) -> u32 {
        self.initial.level()
    }
}

#[derive(Clone, Debug)]
pub struct MoveA {
    pub added: IntervalSet,
}

/// One played stage, or a concession.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub stage: u32,
    pub added: Vec<DyadicInterval>,
    /// B's colours for `added`; empty when B had no answer.
    pub colouring: Vec<ColouredInterval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conceded: Option<Player>,
}

/// Outcome of the restricted stopping-rule search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Legality {
    Exists(IntervalSet),
    NoneLeft,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct GameState {
    config: GameConfig,
    history: Vec<Colouring>,
    transcript: Vec<TranscriptEntry>,
    pending: Option<IntervalSet>,
    status: Status,
    stage: u32,
    last_violation: Option<Violation>,
}

/// JSON view of a game for clients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameSnapshot {
    pub j: u32,
    pub d: u32,
    pub eta: Rational,
    pub restricted: bool,
    pub seat_a: Seat,
    pub seat_b: Seat,
    pub stage: u32,
    pub status: Status,
    pub turn: Option<Player>,
    /// Current collection; pending intervals carry no colour.
    pub intervals: Vec<ColouredInterval>,
    pub pending: Vec<DyadicInterval>,
    pub last_violation: Option<Violation>,
    pub transcript: Vec<TranscriptEntry>,
}

fn illegal(reason: impl Into<String>, violation: Option<Violation>) -> Error {
    Error::IllegalMove {
        reason: reason.into(),
        violation,
    }
}

impl GameState {
    pub fn new_game(config: GameConfig) -> Result<GameState> {
        let initial = &config.initial;
        if let Some(v) = check_homogeneous(initial, &config.params)?.into_violation() {
            return Err(Error::Precondition(v));
        }
        let full = initial.len_full();
        let status = if full {
            Status::BWins
        } else {
            Status::AwaitingA
        };
        let stage = if full { 0 } else { 1 };
        Ok(GameState {
            history: vec![initial.clone()],
            config,
            transcript: Vec::new(),
            pending: None,
            status,
            stage,
            last_violation: None,
        })
    }

    /// Rebuild a game from its configuration and transcript.
    pub fn replay(config: GameConfig, transcript: &[TranscriptEntry]) -> Result<GameState> {
        let mut game = GameState::new_game(config)?;
        for entry in transcript {
            if let Some(who) = entry.conceded {
                game.concede(who)?;
                continue;
            }
            let added = IntervalSet::from_intervals(game.j(), entry.added.iter().copied())?;
            game.apply_move_a(&MoveA { added })?;
            if entry.colouring.is_empty() {
                game.respond_b()?;
            } else {
                let assignments = entry
                    .colouring
                    .iter()
                    .map(|ci| {
                        let c = ci.colour.ok_or_else(|| {
                            Error::Malformed("transcript entry without colour".into())
                        })?;
                        Ok((ci.interval()?, c))
                    })
                    .collect::<Result<Vec<_>>>()?;
                game.submit_colouring(&assignments)?;
            }
        }
        Ok(game)
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn j(&self) -> u32 {
        self.config.j()
    }

    pub fn params(&self) -> &HomogeneityParams {
        &self.config.params
    }

    /// Completed stages, `C(0)` first.
    pub fn history(&self) -> &[Colouring] {
        &self.history
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn pending(&self) -> Option<&IntervalSet> {
        self.pending.as_ref()
    }

    pub fn last_violation(&self) -> Option<&Violation> {
        self.last_violation.as_ref()
    }

    /// The latest completed colouring.
    pub fn current(&self) -> &Colouring {
        self.history.last().expect("history starts with C(0)")
    }

    fn expect_status(&self, want: Status) -> Result<()> {
        if self.status == want {
            Ok(())
        } else {
            Err(Error::OutOfTurn(self.status.describe().into()))
        }
    }

    /// Validate a move without playing it.
    pub fn check_move_a(&self, mv: &MoveA) -> Result<()> {
        self.expect_status(Status::AwaitingA)?;
        let current = self.current().base();
        if mv.added.is_empty() {
            return Err(illegal("not a strict superset: no interval added", None));
        }
        if mv.added.level() != self.j() {
            return Err(illegal(
                format!("intervals must lie in D_{}", self.j()),
                None,
            ));
        }
        if let Some(iv) = current.first_common(&mv.added) {
            return Err(illegal(
                format!("not a strict superset: {iv} is already in the collection"),
                None,
            ));
        }
        if self.config.restricted {
            let verdict = check_previsible(current, &mv.added, self.config.params.d())?;
            if let Some(v) = verdict.into_violation() {
                return Err(illegal("the pair is not d-previsible", Some(v)));
            }
        }
        Ok(())
    }

    pub fn apply_move_a(&mut self, mv: &MoveA) -> Result<()> {
        self.check_move_a(mv)?;
        self.pending = Some(mv.added.clone());
        self.status = Status::AwaitingB;
        self.last_violation = None;
        Ok(())
    }

    /// A move given as the full new collection `C(n)`.
    pub fn move_from_collection(&self, collection: &IntervalSet) -> Result<MoveA> {
        let current = self.current().base();
        if collection.level() != self.j() {
            return Err(illegal(
                format!("intervals must lie in D_{}", self.j()),
                None,
            ));
        }
        if !current.is_subset(collection) || collection.len() == current.len() {
            return Err(illegal(
                "not a strict superset of the current collection",
                None,
            ));
        }
        Ok(MoveA {
            added: collection.difference(current)?,
        })
    }

    /// Engine reply for Player B.
    ///
    /// A previsible pair is coloured by the constructive extension; any
    /// other pair goes to the exact search, and A wins when it finds no
    /// homogeneous extension. A search that runs out of budget leaves the
    /// game waiting for B.
    pub fn respond_b(&mut self) -> Result<()> {
        self.expect_status(Status::AwaitingB)?;
        let added = self.pending.clone().expect("pending move while awaiting B");
        let current = self.current();
        let params = self.config.params;
        let previsible = check_previsible(current.base(), &added, params.d())?.holds();
        let next = if previsible {
            Some(extend_colouring(current, &added, &params)?)
        } else {
            let config = OracleConfig {
                limit: 1,
                witness_cap: 1,
                budget: self.config.budget,
            };
            let report = oracle_extensions(&current.extended(&added)?, &params, &config)?;
            report.witnesses.into_iter().next()
        };
        match next {
            Some(col) => self.complete_stage(col),
            None => {
                self.transcript.push(TranscriptEntry {
                    stage: self.stage,
                    added: added.iter().collect(),
                    colouring: Vec::new(),
                    conceded: None,
                });
                self.pending = None;
                self.status = Status::AWins;
                Ok(())
            }
        }
    }

    /// Player B's own colours for exactly the pending intervals.
    pub fn submit_colouring(&mut self, assignments: &[(DyadicInterval, Colour)]) -> Result<()> {
        self.expect_status(Status::AwaitingB)?;
        let added = self
            .pending
            .as_ref()
            .expect("pending move while awaiting B");
        let given = IntervalSet::from_intervals(self.j(), assignments.iter().map(|(iv, _)| *iv))
            .map_err(|e| illegal(format!("bad assignment: {e}"), None))?;
        if &given != added {
            return Err(illegal(
                "assign a colour to each new interval, and only to those",
                None,
            ));
        }
        let mut col = self.current().extended(added)?;
        for (iv, c) in assignments {
            col.set(iv, *c)
                .map_err(|e| illegal(format!("bad assignment: {e}"), None))?;
        }
        if let Some(v) = check_homogeneous(&col, &self.config.params)?.into_violation() {
            self.last_violation = Some(v.clone());
            return Err(illegal("the colouring is not homogeneous", Some(v)));
        }
        self.complete_stage(col)
    }

    fn complete_stage(&mut self, col: Colouring) -> Result<()> {
        let added = self.pending.take().expect("pending move");
        debug_assert!(col.preserves(self.current()));
        self.transcript.push(TranscriptEntry {
            stage: self.stage,
            added: added.iter().collect(),
            colouring: added
                .iter()
                .map(|iv| ColouredInterval::new(iv, col.colour_of(&iv)))
                .collect(),
            conceded: None,
        });
        let full = col.len_full();
        self.history.push(col);
        self.last_violation = None;
        if full
            || (self.config.restricted
                && self.legal_previsible_extension(LEGALITY_BUDGET) == Legality::NoneLeft)
        {
            self.status = Status::BWins;
        } else {
            self.stage += 1;
            self.status = Status::AwaitingA;
        }
        Ok(())
    }

    /// Resign on behalf of `who`, who must still be playing.
    pub fn concede(&mut self, who: Player) -> Result<()> {
        if self.status.is_over() {
            return Err(Error::OutOfTurn(self.status.describe().into()));
        }
        self.pending = None;
        self.transcript.push(TranscriptEntry {
            stage: self.stage,
            added: Vec::new(),
            colouring: Vec::new(),
            conceded: Some(who),
        });
        self.status = match who {
            Player::A => Status::BWins,
            Player::B => Status::AWins,
        };
        Ok(())
    }

    fn uncovered(&self) -> Vec<u64> {
        let base = self.current().base();
        (0..1u64 << self.j())
            .filter(|&k| !base.indices().binary_search(&k).is_ok())
            .collect()
    }

    /// Search for a set of uncovered leaves whose addition is previsible,
    /// by increasing size, spending at most `budget` previsibility checks.
    ///
    /// Adding every uncovered leaf fills the board, and a full board has
    /// equal counts in any two siblings, so that move is always previsible.
    /// The search therefore only reports `NoneLeft` on a full board; it is
    /// used to find a small move.
    pub fn legal_previsible_extension(&self, budget: u64) -> Legality {
        let j = self.j();
        let d = self.config.params.d();
        let base = self.current().base();
        let free = self.uncovered();
        if free.is_empty() {
            return Legality::NoneLeft;
        }
        let mut spent = 0u64;
        for size in 1..=free.len() {
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                if spent >= budget {
                    return match IntervalSet::from_indices(j, free.iter().copied()) {
                        Ok(all) => Legality::Exists(all),
                        Err(_) => Legality::Unknown,
                    };
                }
                spent += 1;
                let set = IntervalSet::from_indices(j, pick.iter().map(|&p| free[p]))
                    .expect("distinct uncovered leaves");
                match check_previsible(base, &set, d) {
                    Ok(v) if v.holds() => return Legality::Exists(set),
                    Ok(_) => {}
                    Err(_) => return Legality::Unknown,
                }
                if !next_combination(&mut pick, free.len()) {
                    break;
                }
            }
        }
        Legality::NoneLeft
    }

    pub fn legal_previsible_extension_exists(&self) -> Option<bool> {
        match self.legal_previsible_extension(LEGALITY_BUDGET) {
            Legality::Exists(_) => Some(true),
            Legality::NoneLeft => Some(false),
            Legality::Unknown => None,
        }
    }

    /// Suggested move for Player A in the unrestricted game.
    ///
    /// A chain game follows the scripted move; other boards are searched
    /// for a single uncovered leaf, then a pair, after which B cannot
    /// respond.
    pub fn hint_a(&self) -> Option<MoveA> {
        if self.status != Status::AwaitingA || self.config.restricted {
            return None;
        }
        if let Some(spec) = &self.config.chain {
            if let Ok(fam) = build_counterexample(spec) {
                let k = self.stage as usize;
                if k <= fam.n() as usize && self.current().base() == fam.stage(k - 1) {
                    let added = IntervalSet::from_intervals(self.j(), [fam.added(k)]).ok()?;
                    return Some(MoveA { added });
                }
            }
        }
        self.killer_move()
    }

    /// First single or pair of uncovered leaves with no homogeneous
    /// extension, within the configured budget in total.
    pub fn killer_move(&self) -> Option<MoveA> {
        let free = self.uncovered();
        let j = self.j();
        let mut left = self.config.budget;
        for size in 1..=free.len().min(2) {
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                let added = IntervalSet::from_indices(j, pick.iter().map(|&p| free[p])).ok()?;
                let base = self.current().extended(&added).ok()?;
                let config = OracleConfig {
                    limit: 1,
                    witness_cap: 0,
                    budget: left,
                };
                let report = oracle_extensions(&base, &self.config.params, &config).ok()?;
                left = left.saturating_sub(report.visits);
                if report.count == 0 {
                    return Some(MoveA { added });
                }
                if !next_combination(&mut pick, free.len()) {
                    break;
                }
            }
        }
        None
    }

    /// A random previsible move of at most `max_size` leaves.
    ///
    /// Leaves are tried in random order and kept while the growing move
    /// stays previsible.
    pub fn random_previsible_move<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_size: usize,
    ) -> Option<MoveA> {
        let j = self.j();
        let d = self.config.params.d();
        let base = self.current().base();
        let mut free = self.uncovered();
        if free.is_empty() {
            return None;
        }
        free.shuffle(rng);
        let target = rng.random_range(1..=max_size.max(1));
        let mut chosen: Vec<u64> = Vec::new();
        for &leaf in &free {
            if chosen.len() == target {
                break;
            }
            chosen.push(leaf);
            let set = IntervalSet::from_indices(j, chosen.iter().copied()).ok()?;
            if !check_previsible(base, &set, d).ok()?.holds() {
                chosen.pop();
            }
        }
        if chosen.is_empty() {
            return match self.legal_previsible_extension(LEGALITY_BUDGET) {
                Legality::Exists(added) => Some(MoveA { added }),
                _ => None,
            };
        }
        Some(MoveA {
            added: IntervalSet::from_indices(j, chosen).ok()?,
        })
    }

    /// Move chosen by an engine seat for Player A: the hint when there is
    /// one, else a random previsible move in the restricted game or the
    /// first uncovered leaf otherwise.
    pub fn engine_move_a<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<MoveA> {
        if self.status != Status::AwaitingA {
            return None;
        }
        if self.config.restricted {
            return self.random_previsible_move(rng, 3);
        }
        if let Some(mv) = self.hint_a() {
            return Some(mv);
        }
        let leaf = *self.uncovered().first()?;
        Some(MoveA {
            added: IntervalSet::from_indices(self.j(), [leaf]).ok()?,
        })
    }

    pub fn snapshot(&self) -> GameSnapshot {
        let current = self.current();
        let mut intervals: Vec<ColouredInterval> = current
            .base()
            .iter()
            .zip(current.colours())
            .map(|(iv, &c)| ColouredInterval::new(iv, c))
            .collect();
        let pending: Vec<DyadicInterval> = self.pending.iter().flat_map(|p| p.iter()).collect();
        intervals.extend(pending.iter().map(|&iv| ColouredInterval::new(iv, None)));
        intervals.sort_by_key(|ci| ci.index);
        GameSnapshot {
            j: self.j(),
            d: self.config.params.d(),
            eta: self.config.params.eta(),
            restricted: self.config.restricted,
            seat_a: self.config.seat_a,
            seat_b: self.config.seat_b,
            stage: self.stage,
            status: self.status,
            turn: self.status.to_move(),
            intervals,
            pending,
            last_violation: self.last_violation.clone(),
            transcript: self.transcript.clone(),
        }
    }
}

/// Advance `pick` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for t in i + 1..k {
                pick[t] = pick[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Colouring {
    /// Whether the base is all of `D_j`.
    pub fn len_full(&self) -> bool {
        self.base().len() as u64 == 1u64 << self.level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::colour_modulo_d;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn half() -> Rational {
        Rational::new(1, 2).unwrap()
    }

    fn chain_game(restricted: bool) -> GameState {
        let spec = ChainSpec::leftmost(1, 2, 4);
        GameState::new_game(GameConfig::from_chain(&spec, restricted).unwrap()).unwrap()
    }

    fn single(j: u32, iv: DyadicInterval) -> MoveA {
        MoveA {
            added: IntervalSet::from_intervals(j, [iv]).unwrap(),
        }
    }

    #[test]
    fn full_board_is_won_by_b_at_once() {
        let col = colour_modulo_d(&IntervalSet::full(2).unwrap(), 2, None).unwrap();
        let params = HomogeneityParams::new(half(), 2).unwrap();
        let game = GameState::new_game(GameConfig::new(params, col)).unwrap();
        assert_eq!(game.status(), Status::BWins);
        assert_eq!(game.stage(), 0);
        assert!(game.hint_a().is_none());
    }

    #[test]
    fn inhomogeneous_start_is_rejected() {
        let set = IntervalSet::from_indices(2, [0, 1]).unwrap();
        let col = Colouring::from_vec(set, 2, vec![Some(1), Some(1)]).unwrap();
        let params = HomogeneityParams::new(half(), 2).unwrap();
        assert!(matches!(
            GameState::new_game(GameConfig::new(params, col)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn chain_playback_ends_with_a_winning_at_stage_n() {
        let mut game = chain_game(false);
        assert_eq!(game.status(), Status::AwaitingA);
        let fam = build_counterexample(&ChainSpec::leftmost(1, 2, 4)).unwrap();
        let mv = game.hint_a().unwrap();
        assert_eq!(mv.added.iter().collect::<Vec<_>>(), vec![fam.added(1)]);
        game.apply_move_a(&mv).unwrap();
        assert_eq!(game.status(), Status::AwaitingB);
        game.respond_b().unwrap();
        assert_eq!(game.current().colour_of(&fam.added(1)), Some(1));
        let mv = game.hint_a().unwrap();
        assert_eq!(mv.added.get(0), fam.added(2));
        game.apply_move_a(&mv).unwrap();
        game.respond_b().unwrap();
        assert_eq!(game.status(), Status::AWins);
        assert_eq!(game.stage(), 2);
    }

    #[test]
    fn restricted_game_rejects_the_chain_move() {
        let mut game = chain_game(true);
        let fam = build_counterexample(&ChainSpec::leftmost(1, 2, 4)).unwrap();
        let err = game.apply_move_a(&single(4, fam.added(1))).unwrap_err();
        assert!(matches!(
            err,
            Error::IllegalMove {
                violation: Some(_),
                ..
            }
        ));
        assert_eq!(game.status(), Status::AwaitingA);
        assert!(game.hint_a().is_none());
    }

    #[test]
    fn empty_and_overlapping_moves_are_rejected() {
        let mut game = chain_game(false);
        let empty = MoveA {
            added: IntervalSet::empty(4).unwrap(),
        };
        assert!(matches!(
            game.apply_move_a(&empty),
            Err(Error::IllegalMove { .. })
        ));
        let taken = game.current().base().get(0);
        assert!(game.apply_move_a(&single(4, taken)).is_err());
        assert!(matches!(game.respond_b(), Err(Error::OutOfTurn(_))));
    }

    #[test]
    fn human_submission_is_validated() {
        let mut game = chain_game(false);
        game.config.seat_b = Seat::Human;
        let fam = build_counterexample(&ChainSpec::leftmost(1, 2, 4)).unwrap();
        let j2 = fam.added(1);
        game.apply_move_a(&single(4, j2)).unwrap();
        let err = game.submit_colouring(&[(j2, 2)]).unwrap_err();
        assert!(err.violation().is_some());
        assert_eq!(game.status(), Status::AwaitingB);
        assert!(game.submit_colouring(&[]).is_err());
        game.submit_colouring(&[(j2, 1)]).unwrap();
        assert_eq!(game.status(), Status::AwaitingA);
        assert_eq!(game.history().len(), 2);
    }

    #[test]
    fn concession_ends_the_game() {
        let mut game = chain_game(false);
        game.concede(Player::A).unwrap();
        assert_eq!(game.status(), Status::BWins);
        assert!(game.concede(Player::B).is_err());
    }

    #[test]
    fn complement_is_always_a_previsible_move() {
        let params = HomogeneityParams::new(half(), 2).unwrap();
        let set = IntervalSet::from_indices(3, [0, 1]).unwrap();
        let col = colour_modulo_d(&set, 2, None).unwrap();
        let game = GameState::new_game(GameConfig::new(params, col)).unwrap();
        match game.legal_previsible_extension(LEGALITY_BUDGET) {
            Legality::Exists(s) => assert_eq!(s.len(), 1),
            other => panic!("{other:?}"),
        }
        match game.legal_previsible_extension(0) {
            Legality::Exists(s) => assert_eq!(s.len(), 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blank_board_has_no_killer() {
        let params = HomogeneityParams::new(half(), 2).unwrap();
        let blank = Colouring::uncoloured(IntervalSet::empty(3).unwrap(), 2).unwrap();
        let game = GameState::new_game(GameConfig::new(params, blank)).unwrap();
        assert!(game.hint_a().is_none());
    }

    #[test]
    fn replay_reproduces_the_snapshot() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = HomogeneityParams::new(half(), 3).unwrap();
        let blank = Colouring::uncoloured(IntervalSet::empty(4).unwrap(), 3).unwrap();
        let mut config = GameConfig::new(params, blank);
        config.restricted = true;
        let mut game = GameState::new_game(config.clone()).unwrap();
        while let Some(mv) = game.engine_move_a(&mut rng) {
            game.apply_move_a(&mv).unwrap();
            game.respond_b().unwrap();
        }
        assert_eq!(game.status(), Status::BWins);
        let again = GameState::replay(config, game.transcript()).unwrap();
        assert_eq!(again.snapshot(), game.snapshot());
    }
}
