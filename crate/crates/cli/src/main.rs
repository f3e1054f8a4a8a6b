//! `dyad`: homogeneity checks, colouring, exhaustive search, the
//! counterexample family and the colouring game from the command line.
//!
//! Every command prints JSON on stdout (or a tree with `--pretty`) and
//! exits with 0 on success, 1 when the answer is negative, and 2 on usage,
//! input or precondition errors.

mod family;
mod render;

use std::fmt::Write as _;
use std::io::Read;
use std::net::IpAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dyad_core::{
    build_counterexample, check_homogeneous, check_previsible, colour_modulo_d,
    extend_colouring_traced, oracle_extensions, verify_counterexample, ChainSpec, CollectionDoc,
    Error, GameConfigDoc, GameState, OracleConfig, Player, Seat, Status, TranscriptEntry, Verdict,
    Violation, DEFAULT_BUDGET,
};
use dyad_service::{ServiceConfig, DEFAULT_CAPACITY, DEFAULT_PORT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use family::FamilyDoc;

#[derive(Parser)]
#[command(
    name = "dyad",
    version,
    about = "Homogeneous colourings of dyadic intervals"
)]
struct Cli {
    /// Print a human-readable tree instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Search budget (node visits) for exhaustive searches.
    #[arg(long, global = true, env = "DYAD_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// JSON input file; stdin when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check (η,d)-homogeneity of a totally coloured collection.
    Check(Input),
    /// Check d-previsibility of (C, U): coloured entries are C, the rest U.
    Previsible(Input),
    /// Colour a collection cyclically, left to right.
    Modd {
        #[command(flatten)]
        input: Input,
        /// Colour order, a permutation of 1..d (default 1,2,…,d).
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u32>>,
    },
    /// Extend the colouring of C to a homogeneous colouring of C ∪ U.
    Colour {
        #[command(flatten)]
        input: Input,
        /// Also print the case taken at every node.
        #[arg(long)]
        trace: bool,
    },
    /// Count homogeneous total extensions of a partial colouring.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Stop after this many extensions.
        #[arg(long)]
        limit: Option<u64>,
        /// Number of witnesses to print.
        #[arg(long, default_value_t = 4)]
        witnesses: usize,
    },
    /// Build (and optionally verify) the stage family with d = 2^a, η = 1/n.
    Counterexample {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        j: u32,
        /// Index of the innermost chain interval at level j - a.
        #[arg(long, conflicts_with = "seed")]
        anchor: Option<u64>,
        /// Random anchor and leaf placement from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        verify: bool,
        /// Skip the exhaustive checks when verifying.
        #[arg(long, requires = "verify")]
        no_oracle: bool,
    },
    /// Play a game between engine seats and print its transcript.
    Selfplay {
        /// Counterexample preset `a,n,j`.
        #[arg(long, value_delimiter = ',', conflicts_with = "config")]
        chain: Option<Vec<u32>>,
        /// Game configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Only previsible moves are allowed.
        #[arg(long)]
        restricted: bool,
        #[arg(long, value_enum, default_value_t = Strategy::Scripted)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay a `{config, transcript}` document and print the final state.
    Replay(Input),
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        /// Restore games from this file at start and save them on exit.
        #[arg(long)]
        snapshot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAPACITY)]
        capacity: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    /// The counterexample script or killer search; random previsible moves
    /// in the restricted game.
    Scripted,
    /// Random previsible moves of up to three leaves.
    Random,
}

/// A finished command: JSON for stdout, a rendering for `--pretty`, and
/// whether the answer was positive.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

struct Failure {
    message: String,
    violation: Option<Violation>,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            message: err.to_string(),
            violation: err.violation().cloned(),
        }
    }
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            violation: None,
        }
    }
}

type Run<T> = Result<T, Failure>;

fn read_input(path: Option<&Path>) -> Run<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p != Path::new("-") => {
            buf = std::fs::read(p).map_err(|e| Failure::new(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::new(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: Option<&Path>) -> Run<T> {
    let bytes = read_input(path)?;
    serde_json::from_slice(&bytes).map_err(|e| Failure::new(format!("malformed input: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn verdict_line(verdict: &Verdict, yes: &str) -> String {
    match verdict.violation() {
        None => format!("{yes}\n"),
        Some(v) => format!("not {yes}: {v}\n"),
    }
}

fn check(input: &Input) -> Run<Report> {
    let doc: CollectionDoc = read_json(input.file.as_deref())?;
    let col = doc.colouring()?;
    let verdict = check_homogeneous(&col, &doc.params()?)?;
    let mark = verdict.violation().map(|v| v.testing_interval);
    Ok(Report {
        json: json!({ "homogeneous": verdict.holds(), "violation": verdict.violation() }),
        text: render::tree(&col, None, mark) + &verdict_line(&verdict, "homogeneous"),
        ok: verdict.holds(),
    })
}

fn previsible(input: &Input) -> Run<Report> {
    let doc: CollectionDoc = read_json(input.file.as_deref())?;
    let (c, u) = doc.split()?;
    let verdict = check_previsible(c.base(), &u, doc.d)?;
    let mark = verdict.violation().map(|v| v.testing_interval);
    Ok(Report {
        json: json!({ "previsible": verdict.holds(), "violation": verdict.violation() }),
        text: render::tree(&c, Some(&u), mark) + &verdict_line(&verdict, "previsible"),
        ok: verdict.holds(),
    })
}

fn modd(input: &Input, order: Option<&[u32]>) -> Run<Report> {
    let doc: CollectionDoc = read_json(input.file.as_deref())?;
    let col = colour_modulo_d(&doc.interval_set()?, doc.d, order)?;
    Ok(Report {
        json: to_json(&CollectionDoc::from_colouring(&col, doc.eta)),
        text: render::tree(&col, None, None),
        ok: true,
    })
}

fn colour(input: &Input, trace: bool) -> Run<Report> {
    let doc: CollectionDoc = read_json(input.file.as_deref())?;
    let (c, u) = doc.split()?;
    let ext = extend_colouring_traced(&c, &u, &doc.params()?)?;
    let out = CollectionDoc::from_colouring(&ext.colouring, doc.eta);
    let json = if trace {
        json!({ "colouring": out, "trace": ext.trace })
    } else {
        to_json(&out)
    };
    let mut text = render::tree(&ext.colouring, None, None);
    if trace {
        for r in &ext.trace {
            let side = if r.mirrored { " (mirrored)" } else { "" };
            let _ = writeln!(text, "{} {}{side}", r.node, r.label.as_str());
        }
    }
    Ok(Report {
        json,
        text,
        ok: true,
    })
}

fn oracle(input: &Input, limit: Option<u64>, witnesses: usize, budget: u64) -> Run<Report> {
    let doc: CollectionDoc = read_json(input.file.as_deref())?;
    let base = doc.colouring()?;
    let config = OracleConfig {
        limit: limit.unwrap_or(u64::MAX),
        witness_cap: witnesses,
        budget,
    };
    let report = oracle_extensions(&base, &doc.params()?, &config)?;
    let docs: Vec<CollectionDoc> = report
        .witnesses
        .iter()
        .map(|w| CollectionDoc::from_colouring(w, doc.eta))
        .collect();
    let bound = if report.saturated { "at least " } else { "" };
    let mut text = format!("{bound}{} extension(s)\n", report.count);
    if let Some(c) = report.canonical_count {
        let _ = writeln!(text, "{c} up to colour permutation");
    }
    for w in &report.witnesses {
        text.push('\n');
        text.push_str(&render::tree(w, None, None));
    }
    Ok(Report {
        json: json!({
            "count": report.count,
            "saturated": report.saturated,
            "canonical_count": report.canonical_count,
            "visits": report.visits,
            "witnesses": docs,
        }),
        text,
        ok: true,
    })
}

#[allow(clippy::too_many_arguments)]
fn counterexample(
    a: u32,
    n: u32,
    j: u32,
    anchor: Option<u64>,
    seed: Option<u64>,
    verify: bool,
    oracle: bool,
    budget: u64,
) -> Run<Report> {
    let mut spec = ChainSpec::leftmost(a, n, j);
    // Validates (a, n, j) before random placement relies on them.
    let mut fam = build_counterexample(&spec)?;
    if let Some(seed) = seed {
        spec = ChainSpec::random(a, n, j, &mut ChaCha8Rng::seed_from_u64(seed));
    } else if let Some(anchor) = anchor {
        spec.anchor = anchor;
    }
    if seed.is_some() || anchor.is_some() {
        fam = build_counterexample(&spec)?;
    }
    let doc = FamilyDoc::new(&fam);
    let mut text = String::new();
    for (k, stage) in doc.stages.iter().enumerate() {
        let _ = writeln!(text, "C({k})");
        text.push_str(&render::tree(&stage.colouring()?, None, None));
    }
    if !verify {
        return Ok(Report {
            json: json!({ "family": doc }),
            text,
            ok: true,
        });
    }
    let report = verify_counterexample(&fam, oracle, budget)?;
    let ok = report.verified();
    let _ = writeln!(
        text,
        "stage 0 classes: {:?}\nstage counts: {:?}\nfinal count: {:?}\nprevisible: {:?}\n{}",
        report.stage0_classes,
        report.stage_counts,
        report.final_count,
        report.previsibility_profile,
        if ok { "verified" } else { "NOT verified" }
    );
    Ok(Report {
        json: json!({ "family": doc, "report": report, "verified": ok }),
        text,
        ok,
    })
}

fn selfplay(
    chain: Option<&[u32]>,
    config: Option<&Path>,
    restricted: bool,
    strategy: Strategy,
    seed: u64,
    budget: u64,
) -> Run<Report> {
    let mut doc = match (chain, config) {
        (Some(&[a, n, j]), None) => GameConfigDoc {
            chain: Some(ChainSpec::leftmost(a, n, j)),
            collection: None,
            restricted,
            seat_a: Seat::Engine,
            seat_b: Seat::Engine,
            budget: None,
        },
        (None, Some(path)) => read_json(Some(path))?,
        _ => return Err(Failure::new("give either --chain a,n,j or --config FILE")),
    };
    doc.restricted |= restricted;
    doc.seat_a = Seat::Engine;
    doc.seat_b = Seat::Engine;
    if budget != DEFAULT_BUDGET {
        doc.budget = Some(budget);
    }
    let mut game = GameState::new_game(doc.to_config()?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Every move adds at least one leaf, so the board fills eventually.
    while !game.status().is_over() {
        match game.status() {
            Status::AwaitingA => {
                let mv = match strategy {
                    Strategy::Scripted => game.engine_move_a(&mut rng),
                    Strategy::Random => game.random_previsible_move(&mut rng, 3),
                };
                match mv {
                    Some(mv) => game.apply_move_a(&mv)?,
                    None => game.concede(Player::A)?,
                }
            }
            _ => game.respond_b()?,
        }
    }
    let snapshot = game.snapshot();
    let text = render::tree(game.current(), None, None)
        + &format!("{:?} after {} stage(s)\n", game.status(), game.stage());
    Ok(Report {
        json: json!({
            "config": game.config().to_doc(),
            "status": snapshot.status,
            "stage": snapshot.stage,
            "transcript": snapshot.transcript,
        }),
        text,
        ok: true,
    })
}

#[derive(Deserialize)]
struct TranscriptDoc {
    config: GameConfigDoc,
    transcript: Vec<TranscriptEntry>,
}

fn replay(input: &Input) -> Run<Report> {
    let doc: TranscriptDoc = read_json(input.file.as_deref())?;
    let game = GameState::replay(doc.config.to_config()?, &doc.transcript)?;
    let text = render::tree(game.current(), game.pending(), None)
        + &format!("{:?} at stage {}\n", game.status(), game.stage());
    Ok(Report {
        json: to_json(&game.snapshot()),
        text,
        ok: true,
    })
}

fn serve(config: ServiceConfig) -> Run<Report> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::new(e.to_string()))?;
    runtime
        .block_on(dyad_service::serve(config))
        .map_err(|e| Failure::new(e.to_string()))?;
    Ok(Report {
        json: json!({ "status": "stopped" }),
        text: "stopped\n".into(),
        ok: true,
    })
}

fn run(cli: &Cli) -> Run<Report> {
    match &cli.command {
        Command::Check(input) => check(input),
        Command::Previsible(input) => previsible(input),
        Command::Modd { input, order } => modd(input, order.as_deref()),
        Command::Colour { input, trace } => colour(input, *trace),
        Command::Oracle {
            input,
            limit,
            witnesses,
        } => oracle(input, *limit, *witnesses, cli.budget),
        Command::Counterexample {
            a,
            n,
            j,
            anchor,
            seed,
            verify,
            no_oracle,
        } => counterexample(*a, *n, *j, *anchor, *seed, *verify, !no_oracle, cli.budget),
        Command::Selfplay {
            chain,
            config,
            restricted,
            strategy,
            seed,
        } => selfplay(
            chain.as_deref(),
            config.as_deref(),
            *restricted,
            *strategy,
            *seed,
            cli.budget,
        ),
        Command::Replay(input) => replay(input),
        Command::Serve {
            host,
            port,
            snapshot,
            capacity,
        } => serve(ServiceConfig {
            addr: (*host, *port).into(),
            snapshot: snapshot.clone(),
            capacity: *capacity,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.pretty {
                print!("{}", report.text);
            } else {
                println!("{}", report.json);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if let Some(v) = &failure.violation {
                eprintln!("  {v}");
            }
            if !cli.pretty {
                println!(
                    "{}",
                    json!({ "error": failure.message, "violation": failure.violation })
                );
            }
            ExitCode::from(2)
        }
    }
}
