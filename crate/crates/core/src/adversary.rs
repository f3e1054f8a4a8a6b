//! The chain family on which consistent colouring eventually fails.
//!
//! With `d = 2^a` and `η = 1/n`, take nested intervals
//! `L_1 ⊂ L_2 ⊂ … ⊂ L_{n+2}` with `L_i ∈ D_{j-a-i+1}`, let `P_i` be the
//! brother of `L_i` inside `L_{i+1}`, put `d - 1` marked leaves `I_1, …` in
//! `L_1` and one marked leaf `J_i` in each `P_i`. The stages are
//!
//! ```text
//! C(k) = {I_1, …, I_{d-1}} ∪ {J_{n-k+1}, …, J_{n+1}},   k = 0, …, n.
//! ```
//!
//! Every stage up to `n - 1` has exactly one consistent colouring (all `J`s
//! share colour 1), and stage `n` has none.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::criteria::check_previsible;
use crate::dyadic::{
    count_table, Colour, Colouring, DyadicInterval, HomogeneityParams, IntervalSet, Rational,
    DEFAULT_MAX_LEVEL,
};
use crate::error::{Error, Result};
use crate::oracle::{oracle_extensions, OracleConfig};

/// Geometry of one realization of the family.
///
/// `anchor` fixes `L_1`; the whole chain (and so the side taken at every
/// level) follows from it. Slots are leaf offsets inside `L_1` and `P_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub a: u32,
    pub n: u32,
    pub j: u32,
    /// Index of `L_1` in `D_{j-a}`.
    #[serde(default)]
    pub anchor: u64,
    /// Offsets of `I_1, …, I_{d-1}` among the `2^a` leaves of `L_1`.
    #[serde(default)]
    pub i_slots: Option<Vec<u64>>,
    /// Offset of `J_i` among the `2^{a+i-1}` leaves of `P_i`.
    #[serde(default)]
    pub j_slots: Option<Vec<u64>>,
}

impl ChainSpec {
    /// Leftmost chain, leftmost slots.
    pub fn leftmost(a: u32, n: u32, j: u32) -> ChainSpec {
        ChainSpec {
            a,
            n,
            j,
            anchor: 0,
            i_slots: None,
            j_slots: None,
        }
    }

    /// Uniformly random anchor and slots. Requires valid `(a, n, j)`.
    pub fn random<R: Rng + ?Sized>(a: u32, n: u32, j: u32, rng: &mut R) -> ChainSpec {
        let d = 1usize << a;
        let anchor = rng.random_range(0..1u64 << (j - a));
        let i_slots = sample(rng, d, d - 1)
            .into_iter()
            .map(|s| s as u64)
            .collect();
        let j_slots = (1..=n + 1)
            .map(|i| rng.random_range(0..1u64 << (a + i - 1)))
            .collect();
        ChainSpec {
            a,
            n,
            j,
            anchor,
            i_slots: Some(i_slots),
            j_slots: Some(j_slots),
        }
    }

    pub fn d(&self) -> u32 {
        1 << self.a
    }

    /// Entry `i - 1` is `true` when `L_i` is the right half of `L_{i+1}`.
    pub fn side_choices(&self) -> Vec<bool> {
        (0..=self.n).map(|i| (self.anchor >> i) & 1 == 1).collect()
    }

    fn i_slots(&self) -> Vec<u64> {
        self.i_slots
            .clone()
            .unwrap_or_else(|| (0..u64::from(self.d()) - 1).collect())
    }

    fn j_slots(&self) -> Vec<u64> {
        self.j_slots
            .clone()
            .unwrap_or_else(|| vec![0; self.n as usize + 1])
    }
}

#[derive(Clone, Debug)]
pub struct StageFamily {
    spec: ChainSpec,
    chain: Vec<DyadicInterval>,
    brothers: Vec<DyadicInterval>,
    i_leaves: Vec<DyadicInterval>,
    j_leaves: Vec<DyadicInterval>,
    stages: Vec<IntervalSet>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConstruction(msg.into())
}

/// Build and geometrically verify the family for `spec`.
pub fn build_counterexample(spec: &ChainSpec) -> Result<StageFamily> {
    let ChainSpec { a, n, j, .. } = *spec;
    if a == 0 || a > 16 {
        return Err(invalid(format!("a = {a} outside 1..=16")));
    }
    if n < 2 {
        return Err(invalid(format!("n = {n} < 2 gives eta > 1/2")));
    }
    if j < n + a + 1 {
        return Err(invalid(format!("j = {j} < n + a + 1 = {}", n + a + 1)));
    }
    if j > DEFAULT_MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            level: j,
            max: DEFAULT_MAX_LEVEL,
        });
    }
    let d = spec.d() as u64;
    let l1 = DyadicInterval::new(j - a, spec.anchor)
        .map_err(|_| invalid(format!("anchor {} outside D_{}", spec.anchor, j - a)))?;

    let chain: Vec<DyadicInterval> = (1..=n + 2)
        .map(|i| l1.ancestor(j + 1 - a - i).expect("level within range"))
        .collect();
    let brothers: Vec<DyadicInterval> = chain[..=n as usize]
        .iter()
        .map(|l| l.sibling().expect("below the root"))
        .collect();

    let i_slots = spec.i_slots();
    if i_slots.len() as u64 != d - 1 {
        return Err(invalid(format!(
            "need {} I-slots, got {}",
            d - 1,
            i_slots.len()
        )));
    }
    let leaves_of = |k: &DyadicInterval| k.span_at(j);
    let i_leaves = i_slots
        .iter()
        .map(|&s| {
            let span = leaves_of(&chain[0]);
            if s >= span.end - span.start {
                return Err(invalid(format!("I-slot {s} outside L_1")));
            }
            DyadicInterval::new(j, span.start + s)
        })
        .collect::<Result<Vec<_>>>()?;
    let j_slots = spec.j_slots();
    if j_slots.len() != n as usize + 1 {
        return Err(invalid(format!(
            "need {} J-slots, got {}",
            n + 1,
            j_slots.len()
        )));
    }
    let j_leaves = j_slots
        .iter()
        .zip(&brothers)
        .enumerate()
        .map(|(i, (&s, p))| {
            let span = leaves_of(p);
            if s >= span.end - span.start {
                return Err(invalid(format!("J-slot {s} outside P_{}", i + 1)));
            }
            DyadicInterval::new(j, span.start + s)
        })
        .collect::<Result<Vec<_>>>()?;

    let stages = (0..=n as usize)
        .map(|k| {
            IntervalSet::from_intervals(
                j,
                i_leaves.iter().chain(&j_leaves[n as usize - k..]).copied(),
            )
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| invalid(format!("marked leaves collide: {e}")))?;

    let fam = StageFamily {
        spec: spec.clone(),
        chain,
        brothers,
        i_leaves,
        j_leaves,
        stages,
    };
    fam.check_geometry()?;
    Ok(fam)
}

impl StageFamily {
    fn check_geometry(&self) -> Result<()> {
        let ChainSpec { a, n, j, .. } = self.spec;
        for (i, l) in self.chain.iter().enumerate() {
            if l.level() != j - a - i as u32 {
                return Err(invalid(format!("L_{} on the wrong level", i + 1)));
            }
        }
        for i in 0..=n as usize {
            let (lo, hi) = (self.chain[i], self.chain[i + 1]);
            let p = self.brothers[i];
            if !hi.contains(&lo) || !hi.contains(&p) || p == lo || p.level() != lo.level() {
                return Err(invalid(format!(
                    "P_{} is not the brother of L_{}",
                    i + 1,
                    i + 1
                )));
            }
            if !p.contains(&self.j_leaves[i]) {
                return Err(invalid(format!("J_{} outside P_{}", i + 1, i + 1)));
            }
        }
        if self.i_leaves.iter().any(|iv| !self.chain[0].contains(iv)) {
            return Err(invalid("I-leaf outside L_1"));
        }
        let d = self.d() as usize;
        for (k, s) in self.stages.iter().enumerate() {
            if s.len() != k + d {
                return Err(invalid(format!("|C({k})| = {} != {}", s.len(), k + d)));
            }
            if k > 0 {
                let prev = &self.stages[k - 1];
                let new = s.difference(prev)?;
                if !prev.is_subset(s) || new.len() != 1 || new.get(0) != self.added(k) {
                    return Err(invalid(format!(
                        "C({k}) does not add J_{}",
                        n as usize - k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn a(&self) -> u32 {
        self.spec.a
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn j(&self) -> u32 {
        self.spec.j
    }

    pub fn d(&self) -> u32 {
        self.spec.d()
    }

    /// `η = 1/n`.
    pub fn params(&self) -> HomogeneityParams {
        HomogeneityParams::new(Rational::new(1, self.n().into()).unwrap(), self.d())
            .expect("n >= 2")
    }

    /// `L_i`, `1 ≤ i ≤ n + 2`.
    pub fn chain(&self, i: usize) -> DyadicInterval {
        self.chain[i - 1]
    }

    /// `P_i`, `1 ≤ i ≤ n + 1`.
    pub fn brother(&self, i: usize) -> DyadicInterval {
        self.brothers[i - 1]
    }

    /// `I_i`, `1 ≤ i ≤ d - 1`.
    pub fn i_leaf(&self, i: usize) -> DyadicInterval {
        self.i_leaves[i - 1]
    }

    /// `J_i`, `1 ≤ i ≤ n + 1`.
    pub fn j_leaf(&self, i: usize) -> DyadicInterval {
        self.j_leaves[i - 1]
    }

    /// `C(k)`.
    pub fn stage(&self, k: usize) -> &IntervalSet {
        &self.stages[k]
    }

    /// The leaf added at stage `k ≥ 1`, namely `J_{n-k+1}`.
    pub fn added(&self, k: usize) -> DyadicInterval {
        self.j_leaf(self.n() as usize - k + 1)
    }

    /// `C(k)` coloured with every `J` in colour 1 and `I_i` in colour `i + 1`.
    pub fn forced_colouring(&self, k: usize) -> Colouring {
        let assignments = self
            .i_leaves
            .iter()
            .enumerate()
            .map(|(i, &iv)| (iv, i as Colour + 2))
            .chain(
                self.j_leaves[self.n() as usize - k..]
                    .iter()
                    .map(|&iv| (iv, 1)),
            );
        Colouring::from_assignments(self.stages[k].clone(), self.d(), assignments)
            .expect("members and colours are in range")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    /// Homogeneous colourings of the blank `C(0)` up to permutation.
    pub stage0_classes: Option<u64>,
    /// Consistent extensions from stage `k - 1` to `C(k)`, `k = 1..n-1`.
    pub stage_counts: Option<Vec<u64>>,
    /// Whether each unique extension gives the new `J` colour 1.
    pub forced_witnesses: Option<Vec<bool>>,
    /// Consistent extensions from stage `n - 1` to `C(n)`.
    pub final_count: Option<u64>,
    /// The all-`J`-colour-1 colourings of `C(0..n-1)` are homogeneous.
    pub forced_colourings_homogeneous: bool,
    /// At stage `n - 1`, `L_s` (`s = 3..n+2`) shows counts `(s-2, 1, …, 1)`.
    pub chain_counts_ok: bool,
    /// `C(n)` with `J_1 ↦ 1` balances at `L_{n+2}` with `η' = 1/(n+1)`.
    pub boundary_loose_holds: bool,
    /// … but not with `η = 1/n`.
    pub boundary_strict_fails: bool,
    pub previsibility_profile: Vec<bool>,
}

impl CounterexampleReport {
    pub fn verified(&self) -> bool {
        let oracle_ok = match (
            self.stage0_classes,
            &self.stage_counts,
            &self.forced_witnesses,
            self.final_count,
        ) {
            (Some(a), Some(b), Some(w), Some(c)) => {
                a == 1 && b.iter().all(|&x| x == 1) && w.iter().all(|&x| x) && c == 0
            }
            (None, None, None, None) => true,
            _ => false,
        };
        oracle_ok
            && self.forced_colourings_homogeneous
            && self.chain_counts_ok
            && self.boundary_loose_holds
            && self.boundary_strict_fails
            && self.previsibility_profile.iter().all(|&p| !p)
    }
}

/// Check the three stage claims (with the oracle when `use_oracle`) and the
/// `η` boundary at the last stage.
pub fn verify_counterexample(
    fam: &StageFamily,
    use_oracle: bool,
    budget: u64,
) -> Result<CounterexampleReport> {
    let n = fam.n() as usize;
    let params = fam.params();
    let cfg = OracleConfig {
        limit: u64::MAX,
        witness_cap: 2,
        budget,
    };

    let extension_base = |k: usize| -> Result<Colouring> {
        let added = IntervalSet::from_intervals(fam.j(), [fam.added(k)])?;
        fam.forced_colouring(k - 1).extended(&added)
    };

    let (mut a, mut b, mut w, mut c) = (None, None, None, None);
    if use_oracle {
        let blank = Colouring::uncoloured(fam.stage(0).clone(), fam.d())?;
        a = oracle_extensions(&blank, &params, &cfg)?.canonical_count;
        let mut counts = Vec::new();
        let mut forced = Vec::new();
        for k in 1..n {
            let r = oracle_extensions(&extension_base(k)?, &params, &cfg)?;
            counts.push(r.count);
            forced.push(
                r.witnesses.len() == 1
                    && r.witnesses[0].colour_of(&fam.added(k)) == Some(1)
                    && r.witnesses[0] == fam.forced_colouring(k),
            );
        }
        b = Some(counts);
        w = Some(forced);
        c = Some(oracle_extensions(&extension_base(n)?, &params, &cfg)?.count);
    }

    let forced_colourings_homogeneous = (0..n).all(|k| {
        crate::criteria::check_homogeneous(&fam.forced_colouring(k), &params)
            .map(|v| v.holds())
            .unwrap_or(false)
    });

    let last = fam.forced_colouring(n - 1);
    let chain_counts_ok = (3..=n + 2).all(|s| {
        let t = count_table(&last, &fam.chain(s)).expect("level in range");
        t.counts[0] == s as u32 - 2 && t.counts[1..].iter().all(|&x| x == 1)
    });

    let top = count_table(&fam.forced_colouring(n), &fam.chain(n + 2))?;
    let (max, _, min, _) = top.extremes();
    let loose = HomogeneityParams::new(Rational::new(1, n as u64 + 1)?, fam.d())?;

    Ok(CounterexampleReport {
        stage0_classes: a,
        stage_counts: b,
        forced_witnesses: w,
        final_count: c,
        forced_colourings_homogeneous,
        chain_counts_ok,
        boundary_loose_holds: loose.balanced(max, min),
        boundary_strict_fails: !params.balanced(max, min),
        previsibility_profile: previsibility_profile(fam)?,
    })
}

/// `d`-previsibility of `(C(k), C(k+1) \ C(k))` for `k = 0..n-1`.
pub fn previsibility_profile(fam: &StageFamily) -> Result<Vec<bool>> {
    (0..fam.n() as usize)
        .map(|k| {
            let u = fam.stage(k + 1).difference(fam.stage(k))?;
            Ok(check_previsible(fam.stage(k), &u, fam.d())?.holds())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn stage_sizes() {
        let fam = build_counterexample(&ChainSpec::leftmost(1, 2, 4)).unwrap();
        let sizes: Vec<usize> = (0..=2).map(|k| fam.stage(k).len()).collect();
        assert_eq!(sizes, vec![2, 3, 4]);
        // Leftmost realization: I_1 = (4,0), J_1 = (4,2), J_2 = (4,4), J_3 = (4,8).
        assert_eq!(fam.stage(2).indices(), &[0, 2, 4, 8]);
        assert_eq!(fam.chain(4), DyadicInterval::ROOT);
    }

    #[test]
    fn stage0_colour_convention() {
        let fam = build_counterexample(&ChainSpec::leftmost(2, 3, 6)).unwrap();
        let col = fam.forced_colouring(0);
        assert_eq!(col.base().len(), 4);
        assert_eq!(col.colour_of(&fam.j_leaf(4)), Some(1));
        for i in 1..=3 {
            assert_eq!(col.colour_of(&fam.i_leaf(i)), Some(i as Colour + 1));
        }
    }

    #[test]
    fn rejects_short_depth() {
        assert!(matches!(
            build_counterexample(&ChainSpec::leftmost(1, 2, 3)),
            Err(Error::InvalidConstruction(_))
        ));
        assert!(build_counterexample(&ChainSpec::leftmost(1, 1, 5)).is_err());
    }

    #[test]
    fn rejects_bad_slots() {
        let mut spec = ChainSpec::leftmost(1, 2, 4);
        spec.i_slots = Some(vec![2]);
        assert!(build_counterexample(&spec).is_err());
        let mut spec = ChainSpec::leftmost(2, 2, 5);
        spec.i_slots = Some(vec![0, 0, 1]);
        assert!(build_counterexample(&spec).is_err());
        let mut spec = ChainSpec::leftmost(1, 2, 4);
        spec.anchor = 8;
        assert!(build_counterexample(&spec).is_err());
    }

    #[test]
    fn verify_small_grid() {
        for (a, n, j) in [(1, 2, 4), (1, 3, 5), (2, 2, 5)] {
            let fam = build_counterexample(&ChainSpec::leftmost(a, n, j)).unwrap();
            let r = verify_counterexample(&fam, true, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.stage0_classes, Some(1));
            assert_eq!(r.stage_counts, Some(vec![1; n as usize - 1]));
            assert_eq!(r.final_count, Some(0));
            assert!(r.verified(), "{r:?}");
            assert_eq!(r.previsibility_profile, vec![false; n as usize]);
        }
    }

    #[test]
    fn side_choices_follow_anchor() {
        let mut spec = ChainSpec::leftmost(1, 2, 5);
        spec.anchor = 0b1010;
        assert_eq!(spec.side_choices(), vec![false, true, false]);
        let fam = build_counterexample(&spec).unwrap();
        for (i, right) in spec.side_choices().into_iter().enumerate() {
            assert_eq!(fam.chain(i + 1).is_left_child(), !right);
        }
    }
}
