//! Homogeneity and previsibility predicates, and the modulo-`d` colouring.
//!
//! Every scan is top-down in `(level, index)` order and reports the first
//! failing testing interval, so diagnostics are deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyadic::{
    count_table, Colour, Colouring, CountTree, DyadicInterval, HomogeneityParams, IntervalSet,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    #[serde(rename = "HOM1")]
    Hom1,
    #[serde(rename = "HOM2")]
    Hom2,
    #[serde(rename = "PREVIS")]
    Previs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ViolationDetail {
    /// Low-cardinality regime: `colour` occurs `count ≥ 2` times.
    Hom1 { colour: Colour, count: u32 },
    /// High-cardinality regime: `η · max > min`.
    Hom2 {
        max: u32,
        min: u32,
        argmax: Colour,
        argmin: Colour,
    },
    /// `light` holds fewer than `d` members of `C ∪ U` while `heavy` holds at
    /// least `d` and meets both `C` and `U`.
    Previs {
        parent: DyadicInterval,
        light: DyadicInterval,
        heavy: DyadicInterval,
        light_total: u32,
        heavy_total: u32,
        heavy_coloured: u32,
        heavy_uncoloured: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub testing_interval: DyadicInterval,
    pub detail: ViolationDetail,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.detail {
            ViolationDetail::Hom1 { colour, count } => write!(
                f,
                "HOM1 at {}: colour {colour} occurs {count} times",
                self.testing_interval
            ),
            ViolationDetail::Hom2 {
                max,
                min,
                argmax,
                argmin,
            } => write!(
                f,
                "HOM2 at {}: max {max} (colour {argmax}) vs min {min} (colour {argmin})",
                self.testing_interval
            ),
            ViolationDetail::Previs {
                light,
                heavy,
                light_total,
                heavy_total,
                ..
            } => write!(
                f,
                "PREVIS at {}: {light} holds {light_total} < d, {heavy} holds {heavy_total} with both kinds",
                self.testing_interval
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }

    pub fn into_violation(self) -> Option<Violation> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(v) => Some(v),
        }
    }
}

/// Test one node given its colour counts (uncoloured members excluded).
pub fn node_violation(
    counts: &[u32],
    params: &HomogeneityParams,
    at: DyadicInterval,
) -> Option<Violation> {
    let total: u32 = counts.iter().sum();
    if total > params.d() {
        let (mut max, mut argmax, mut min, mut argmin) = (0, 1, u32::MAX, 1);
        for (i, &c) in counts.iter().enumerate() {
            if c > max {
                (max, argmax) = (c, i as Colour + 1);
            }
            if c < min {
                (min, argmin) = (c, i as Colour + 1);
            }
        }
        (!params.balanced(max, min)).then_some(Violation {
            kind: ViolationKind::Hom2,
            testing_interval: at,
            detail: ViolationDetail::Hom2 {
                max,
                min,
                argmax,
                argmin,
            },
        })
    } else {
        counts.iter().position(|&c| c >= 2).map(|i| Violation {
            kind: ViolationKind::Hom1,
            testing_interval: at,
            detail: ViolationDetail::Hom1 {
                colour: i as Colour + 1,
                count: counts[i],
            },
        })
    }
}

fn check_params(col: &Colouring, params: &HomogeneityParams) -> Result<()> {
    if col.d() != params.d() {
        return Err(Error::ColourCountMismatch {
            colouring: col.d(),
            params: params.d(),
        });
    }
    Ok(())
}

/// `(η, d)`-homogeneity of a total colouring over every testing interval
/// `L` with `|L| ≥ 2^-j`.
pub fn check_homogeneous(col: &Colouring, params: &HomogeneityParams) -> Result<Verdict> {
    col.require_total()?;
    check_params(col, params)?;
    let tree = CountTree::of_colouring(col);
    let d = params.d() as usize;
    for (node, row) in tree.all_nodes() {
        if let Some(v) = node_violation(&row[..d], params, node) {
            return Ok(Verdict::Fails(v));
        }
    }
    Ok(Verdict::Holds)
}

/// As [`check_homogeneous`], but only over testing intervals inside `within`.
pub fn check_homogeneous_within(
    col: &Colouring,
    params: &HomogeneityParams,
    within: &DyadicInterval,
) -> Result<Verdict> {
    col.require_total()?;
    check_params(col, params)?;
    let range = col.base().range_within(within);
    let sub = IntervalSet::from_indices(col.level(), col.base().indices()[range.clone()].to_vec())?;
    let local = Colouring::from_vec(sub, col.d(), col.colours()[range].to_vec())?;
    let tree = CountTree::of_colouring(&local);
    let d = params.d() as usize;
    for level in within.level()..=col.level() {
        for (node, row) in tree.nodes(level) {
            if let Some(v) = node_violation(&row[..d], params, node) {
                return Ok(Verdict::Fails(v));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `d`-previsibility of `(c, u)`, enforced for both orientations of every
/// parent's children. For each parent the left child is tried as the heavy
/// child first.
pub fn check_previsible(c: &IntervalSet, u: &IntervalSet, d: u32) -> Result<Verdict> {
    if c.level() != u.level() {
        return Err(Error::LevelMismatch {
            expected: c.level(),
            found: u.level(),
        });
    }
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    if let Some(iv) = c.first_common(u) {
        return Err(Error::NotDisjoint(iv));
    }
    let h = c.union(u)?;
    let tree = CountTree::build(&h, 2, |p| usize::from(u.contains(&h.get(p))));
    let j = h.level();
    for level in 0..j {
        for (parent, _) in tree.nodes(level) {
            let (left, right) = parent.children();
            let rl = tree.row_or_zero(&left);
            let rr = tree.row_or_zero(&right);
            for (heavy, hr, light, lr) in [(left, &rl, right, &rr), (right, &rr, left, &rl)] {
                let heavy_total = hr[0] + hr[1];
                let light_total = lr[0] + lr[1];
                if light_total < d && heavy_total >= d && hr[0] > 0 && hr[1] > 0 {
                    return Ok(Verdict::Fails(Violation {
                        kind: ViolationKind::Previs,
                        testing_interval: parent,
                        detail: ViolationDetail::Previs {
                            parent,
                            light,
                            heavy,
                            light_total,
                            heavy_total,
                            heavy_coloured: hr[0],
                            heavy_uncoloured: hr[1],
                        },
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Enumerate `s` left to right as `Γ_0, Γ_1, …` and give `Γ_l` colour
/// `order[l mod d]` (default order `1, …, d`).
pub fn colour_modulo_d(s: &IntervalSet, d: u32, order: Option<&[Colour]>) -> Result<Colouring> {
    let identity: Vec<Colour> = (1..=d).collect();
    let order = order.unwrap_or(&identity);
    let mut seen = vec![false; d as usize];
    if order.len() != d as usize
        || order
            .iter()
            .any(|&c| c == 0 || c > d || std::mem::replace(&mut seen[c as usize - 1], true))
    {
        return Err(Error::InvalidParams(format!(
            "colour order {order:?} is not a permutation of 1..={d}"
        )));
    }
    let colours = (0..s.len()).map(|l| Some(order[l % d as usize])).collect();
    Colouring::from_vec(s.clone(), d, colours)
}

impl Violation {
    /// Recompute the counts at the reported testing interval and confirm the
    /// homogeneity failure is real and matches the recorded detail.
    pub fn confirms_inhomogeneity(&self, col: &Colouring, params: &HomogeneityParams) -> bool {
        let Ok(table) = count_table(col, &self.testing_interval) else {
            return false;
        };
        node_violation(&table.counts, params, self.testing_interval).as_ref() == Some(self)
    }

    /// Recount `C ∪ U` in the reported children and confirm the failure.
    pub fn confirms_non_previsibility(&self, c: &IntervalSet, u: &IntervalSet, d: u32) -> bool {
        let ViolationDetail::Previs {
            parent,
            light,
            heavy,
            ..
        } = &self.detail
        else {
            return false;
        };
        let (a, b) = parent.children();
        let siblings = (*light == a && *heavy == b) || (*light == b && *heavy == a);
        let light_total = c.count_in(light) + u.count_in(light);
        let heavy_c = c.count_in(heavy);
        let heavy_u = u.count_in(heavy);
        siblings
            && light_total < d as usize
            && heavy_c + heavy_u >= d as usize
            && heavy_c > 0
            && heavy_u > 0
    }
}
