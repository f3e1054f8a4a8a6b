use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use dyad_core::CollectionDoc;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn dyad(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dyad"))
        .args(args)
        .env_remove("DYAD_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn exit_codes_over_the_fixture_corpus() {
    let table: &[(&str, &str, i32)] = &[
        ("check", "mod2_colouring.json", 0),
        ("check", "hom1_violation.json", 1),
        ("check", "hom2_violation.json", 1),
        ("check", "partial.json", 2),
        ("check", "malformed.json", 2),
        ("check", "bad_colour.json", 2),
        ("check", "chain_stage0.json", 0),
        ("previsible", "previsible_pair.json", 0),
        ("previsible", "nonprevisible.json", 1),
        ("previsible", "malformed.json", 2),
        ("colour", "previsible_pair.json", 0),
        ("colour", "nonprevisible.json", 2),
        ("colour", "chain_last_stage.json", 2),
        ("modd", "partial.json", 0),
        ("oracle", "chain_last_stage.json", 0),
        ("oracle", "malformed.json", 2),
        ("replay", "mod2_colouring.json", 2),
    ];
    for &(cmd, file, expected) in table {
        let path = fixture(file);
        let out = dyad(&[cmd, path.to_str().unwrap()], None);
        assert_eq!(
            code(&out),
            expected,
            "{cmd} {file}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let body = json_of(&out);
        if expected == 2 {
            assert!(body["error"].is_string(), "{cmd} {file}");
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = serde_json::from_str::<CollectionDoc>(&text) else {
            continue;
        };
        let again: CollectionDoc =
            serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again, "{}", path.display());
    }
}

#[test]
fn check_reads_stdin() {
    let bytes = std::fs::read(fixture("mod2_colouring.json")).unwrap();
    let out = dyad(&["check"], Some(&bytes));
    assert_eq!(code(&out), 0);
    assert_eq!(
        json_of(&out),
        serde_json::json!({ "homogeneous": true, "violation": null })
    );
    let out = dyad(&["check", "-"], Some(b"{ not json"));
    assert_eq!(code(&out), 2);
}

#[test]
fn violations_are_reported() {
    let out = dyad(
        &["check", fixture("hom2_violation.json").to_str().unwrap()],
        None,
    );
    let v = &json_of(&out)["violation"];
    assert_eq!(v["kind"], "HOM2");
    assert_eq!(
        v["testing_interval"],
        serde_json::json!({ "level": 0, "index": 0 })
    );
    assert_eq!(
        (v["detail"]["max"].as_u64(), v["detail"]["min"].as_u64()),
        (Some(3), Some(1))
    );

    let out = dyad(
        &["colour", fixture("nonprevisible.json").to_str().unwrap()],
        None,
    );
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["violation"]["kind"], "PREVIS");
}

#[test]
fn modd_output_is_homogeneous() {
    let out = dyad(
        &[
            "modd",
            "--order",
            "2,1",
            fixture("partial.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let doc: CollectionDoc = serde_json::from_slice(&out.stdout).unwrap();
    let colours: Vec<_> = doc.intervals.iter().map(|i| i.colour).collect();
    assert_eq!(colours, [Some(2), Some(1)]);
    let out = dyad(&["check"], Some(&out.stdout));
    assert_eq!(code(&out), 0);

    let out = dyad(
        &[
            "modd",
            "--order",
            "1,1",
            fixture("partial.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn colour_extends_and_keeps_the_base() {
    let out = dyad(
        &[
            "colour",
            "--trace",
            fixture("previsible_pair.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let body = json_of(&out);
    assert!(!body["trace"].as_array().unwrap().is_empty());
    let doc: CollectionDoc = serde_json::from_value(body["colouring"].clone()).unwrap();
    assert_eq!(doc.intervals.len(), 4);
    assert_eq!(doc.intervals[0].colour, Some(1));
    assert_eq!(doc.intervals[2].colour, Some(2));
    let out = dyad(
        &["check"],
        Some(serde_json::to_string(&doc).unwrap().as_bytes()),
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn oracle_counts() {
    let path = fixture("chain_last_stage.json");
    let out = dyad(&["oracle", path.to_str().unwrap()], None);
    let body = json_of(&out);
    assert_eq!(body["count"], 0);
    assert_eq!(body["witnesses"], serde_json::json!([]));

    // The blank first stage has exactly one colouring up to permutation.
    let mut blank: CollectionDoc =
        serde_json::from_str(&std::fs::read_to_string(fixture("chain_stage0.json")).unwrap())
            .unwrap();
    for i in &mut blank.intervals {
        i.colour = None;
    }
    let input = serde_json::to_vec(&blank).unwrap();
    let out = dyad(&["oracle", "--witnesses", "1"], Some(&input));
    let body = json_of(&out);
    assert_eq!(body["count"], 2);
    assert_eq!(body["canonical_count"], 1);
    assert_eq!(body["witnesses"].as_array().unwrap().len(), 1);

    let out = dyad(&["oracle", "--limit", "1"], Some(&input));
    assert_eq!(json_of(&out)["saturated"], true);
}

#[test]
fn budget_comes_from_the_environment() {
    let path = fixture("chain_stage0.json");
    let mut blank: CollectionDoc =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for i in &mut blank.intervals {
        i.colour = None;
    }
    let input = serde_json::to_vec(&blank).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_dyad"))
        .arg("oracle")
        .env("DYAD_BUDGET", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(json_of(&out)["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn counterexample_verifies() {
    let out = dyad(
        &[
            "counterexample",
            "--a",
            "1",
            "--n",
            "2",
            "--j",
            "4",
            "--verify",
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let body = json_of(&out);
    let report = &body["report"];
    assert_eq!(report["stage0_classes"], 1);
    assert_eq!(report["stage_counts"], serde_json::json!([1]));
    assert_eq!(report["final_count"], 0);
    assert_eq!(body["verified"], true);
    assert_eq!(body["family"]["stages"].as_array().unwrap().len(), 3);

    let out = dyad(
        &[
            "counterexample",
            "--a",
            "1",
            "--n",
            "3",
            "--j",
            "7",
            "--seed",
            "9",
            "--verify",
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let out = dyad(
        &["counterexample", "--a", "1", "--n", "2", "--j", "3"],
        None,
    );
    assert_eq!(code(&out), 2);
    let out = dyad(&["counterexample", "--a", "1"], None);
    assert_eq!(code(&out), 2);
}

#[test]
fn selfplay_transcripts_replay() {
    let out = dyad(&["selfplay", "--chain", "1,2,4"], None);
    assert_eq!(code(&out), 0);
    let game = json_of(&out);
    assert_eq!(game["status"], "A_wins");
    assert_eq!(game["stage"], 2);

    let replayed = dyad(&["replay"], Some(&out.stdout));
    assert_eq!(code(&replayed), 0);
    let state = json_of(&replayed);
    assert_eq!(state["status"], "A_wins");
    assert_eq!(state["transcript"], game["transcript"]);

    let out = dyad(
        &[
            "selfplay",
            "--chain",
            "1,2,5",
            "--restricted",
            "--strategy",
            "random",
            "--seed",
            "4",
        ],
        None,
    );
    let game = json_of(&out);
    assert_eq!(game["status"], "B_wins");
    let again = dyad(
        &[
            "selfplay",
            "--chain",
            "1,2,5",
            "--restricted",
            "--strategy",
            "random",
            "--seed",
            "4",
        ],
        None,
    );
    assert_eq!(out.stdout, again.stdout);

    assert_eq!(code(&dyad(&["selfplay", "--chain", "1,2"], None)), 2);
}

#[test]
fn pretty_prints_a_tree() {
    let out = dyad(
        &[
            "--pretty",
            "check",
            fixture("hom1_violation.json").to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("L0"));
    assert!(text.contains("2*"));
    assert!(text.contains("not homogeneous: HOM1"));
}
