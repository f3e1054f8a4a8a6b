mod common;

use common::{naive_extensions, params, random_subset};
use dyad_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random partial base at `j ≤ 5`, `d = 2`: some members coloured at
/// random, at most 10 left blank.
fn random_base(rng: &mut ChaCha8Rng) -> Colouring {
    let j = rng.random_range(1..=5);
    let density = rng.random_range(0.2..0.7);
    let s = random_subset(rng, j, density);
    let mut blank = 0;
    let colours = (0..s.len())
        .map(|_| {
            if blank < 10 && rng.random_bool(0.5) {
                blank += 1;
                None
            } else {
                Some(rng.random_range(1..=2))
            }
        })
        .collect();
    Colouring::from_vec(s, 2, colours).unwrap()
}

#[test]
fn pruned_search_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_24);
    let cfg = OracleConfig {
        witness_cap: usize::MAX,
        ..OracleConfig::default()
    };
    for _ in 0..200 {
        let base = random_base(&mut rng);
        let p = if rng.random_bool(0.5) {
            params(1, 2, 2)
        } else {
            params(1, 3, 2)
        };
        let naive = naive_extensions(&base, &p);
        let report = oracle_extensions(&base, &p, &cfg).unwrap();
        assert_eq!(report.count, naive.len() as u64, "base {base:?}");
        let mut found = report.witnesses.clone();
        let mut expected = naive.clone();
        found.sort_by(|a, b| a.colours().cmp(b.colours()));
        expected.sort_by(|a, b| a.colours().cmp(b.colours()));
        assert_eq!(found, expected);
        for w in &report.witnesses {
            assert!(w.preserves(&base));
            assert!(oracle_admits(&base, &p, w, DEFAULT_BUDGET).unwrap());
        }
        if base.assignments().next().is_none() {
            let mut classes: Vec<Colouring> =
                naive.iter().map(|c| canonicalize(c).unwrap()).collect();
            classes.sort_by(|a, b| a.colours().cmp(b.colours()));
            classes.dedup();
            assert_eq!(report.canonical_count, Some(classes.len() as u64));
        }
    }
}

#[test]
fn limit_and_budget_are_respected() {
    let blank = Colouring::uncoloured(IntervalSet::full(3).unwrap(), 2).unwrap();
    let p = params(1, 2, 2);
    let all = naive_extensions(&blank, &p).len() as u64;
    assert!(all > 2);
    let r = oracle_extensions(
        &blank,
        &p,
        &OracleConfig {
            limit: 2,
            ..OracleConfig::default()
        },
    )
    .unwrap();
    assert_eq!((r.count, r.saturated), (2, true));
    let tight = OracleConfig {
        budget: 3,
        ..OracleConfig::default()
    };
    assert!(matches!(
        oracle_extensions(&blank, &p, &tight),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn blank_chain_stage_has_one_class() {
    let fam = build_counterexample(&ChainSpec::leftmost(2, 2, 5)).unwrap();
    let blank = Colouring::uncoloured(fam.stage(0).clone(), fam.d()).unwrap();
    let r = oracle_extensions(&blank, &fam.params(), &OracleConfig::default()).unwrap();
    assert_eq!(r.canonical_count, Some(1));
    assert_eq!(r.count, 24);
}
