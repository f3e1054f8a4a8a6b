//! Consistent `(η, d)`-homogeneous colourings of dyadic intervals.
//!
//! * [`dyadic`]: intervals, same-level collections, colourings, count trees.
//! * [`criteria`]: homogeneity and previsibility predicates, modulo-`d` colouring.
//! * [`colourer`]: the constructive extension of a homogeneous colouring to a
//!   previsible superset.
//! * [`oracle`]: exhaustive enumeration of consistent extensions.
//! * [`adversary`]: the chain family on which every extension eventually fails.
//! * [`game`]: the two-person colouring game.
//! * [`wire`]: the JSON encoding shared by the CLI and the HTTP service.

pub mod adversary;
pub mod colourer;
pub mod criteria;
pub mod dyadic;
pub mod error;
pub mod game;
pub mod oracle;
pub mod wire;

pub use adversary::{
    build_counterexample, previsibility_profile, verify_counterexample, ChainSpec,
    CounterexampleReport, StageFamily,
};
pub use colourer::{dispatch_case, extend_colouring, extend_colouring_traced, CaseLabel};
pub use criteria::{
    check_homogeneous, check_previsible, colour_modulo_d, Verdict, Violation, ViolationDetail,
    ViolationKind,
};
pub use dyadic::{
    count_table, Colour, Colouring, CountTable, CountTree, DyadicInterval, HomogeneityParams,
    IntervalSet, Rational,
};
pub use error::{Error, Result};
pub use game::{GameConfig, GameSnapshot, GameState, MoveA, Player, Seat, Status, TranscriptEntry};
pub use oracle::{
    canonicalize, oracle_admits, oracle_extensions, ExtensionReport, OracleConfig, DEFAULT_BUDGET,
};
pub use wire::{CollectionDoc, ColouredInterval, GameConfigDoc};
