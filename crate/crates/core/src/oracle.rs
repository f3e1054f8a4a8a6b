//! Exhaustive ground truth for consistent colourings.
//!
//! Depth-first search over the uncoloured members, left to right, colours
//! ascending. A partial assignment is cut when some testing interval can no
//! longer pass:
//!
//! * a node with `|H ∩ L| ≤ d` already shows a colour twice (counts only grow);
//! * a node with `|H ∩ L| > d` has `η · max > min + r`, where `r` members of
//!   the node are still blank (the final minimum is at most `min + r`).
//!
//! Both cuts are sound, and every leaf of the search is re-validated with the
//! full checker, so the reported counts are exact. This module shares no code
//! path with the constructive colourer beyond the checker.

use crate::criteria::check_homogeneous;
use crate::dyadic::{Colour, Colouring, HomogeneityParams};
use crate::error::{Error, Result};

/// Default cap on search node visits.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Stop counting once this many extensions are found.
    pub limit: u64,
    /// Keep at most this many witnesses.
    pub witness_cap: usize,
    /// Maximum search node visits before giving up.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            limit: u64::MAX,
            witness_cap: 16,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Number of homogeneous total extensions, capped at the limit.
    pub count: u64,
    /// `count` hit the limit; the true count is at least `count`.
    pub saturated: bool,
    pub witnesses: Vec<Colouring>,
    /// Extensions up to colour permutation; only computed for a blank base.
    pub canonical_count: Option<u64>,
    pub visits: u64,
}

/// Count (up to `config.limit`) the homogeneous total colourings extending
/// `base`.
pub fn oracle_extensions(
    base: &Colouring,
    params: &HomogeneityParams,
    config: &OracleConfig,
) -> Result<ExtensionReport> {
    if base.d() != params.d() {
        return Err(Error::ColourCountMismatch {
            colouring: base.d(),
            params: params.d(),
        });
    }
    let mut search = Search::new(base, params, config.budget, Order::Ascending);
    let mut witnesses = Vec::new();
    let count = search.run(config.limit, |col| {
        if witnesses.len() < config.witness_cap {
            witnesses.push(col.clone());
        }
        true
    })?;
    let mut visits = search.visits;

    let canonical_count = if base.assignments().next().is_none() {
        let mut sym = Search::new(base, params, config.budget, Order::FirstAppearance);
        let n = sym.run(config.limit, |_| true)?;
        visits += sym.visits;
        Some(n)
    } else {
        None
    };

    Ok(ExtensionReport {
        count,
        saturated: count >= config.limit,
        witnesses,
        canonical_count,
        visits,
    })
}

/// Whether `candidate` is among the extensions the search enumerates.
///
/// The search tries the candidate's colour first at every depth, so a valid
/// candidate is the first leaf reached; any other first leaf (or none) means
/// the candidate is not a solution.
pub fn oracle_admits(
    base: &Colouring,
    params: &HomogeneityParams,
    candidate: &Colouring,
    budget: u64,
) -> Result<bool> {
    if candidate.base() != base.base() || !candidate.is_total() || !candidate.preserves(base) {
        return Ok(false);
    }
    let prefs: Vec<Colour> = candidate.colours().iter().map(|c| c.unwrap()).collect();
    let mut search = Search::new(base, params, budget, Order::Prefer(prefs));
    let mut first = None;
    search.run(1, |col| {
        first = Some(col.clone());
        false
    })?;
    Ok(first.as_ref() == Some(candidate))
}

/// Relabel colours by first appearance left to right.
pub fn canonicalize(col: &Colouring) -> Result<Colouring> {
    col.require_total()?;
    let d = col.d() as usize;
    let mut map = vec![0 as Colour; d + 1];
    let mut next = 1;
    let colours = col
        .colours()
        .iter()
        .map(|c| {
            let c = c.unwrap() as usize;
            if map[c] == 0 {
                map[c] = next;
                next += 1;
            }
            Some(map[c])
        })
        .collect();
    Colouring::from_vec(col.base().clone(), col.d(), colours)
}

enum Order {
    Ascending,
    /// Only colours up to one past the largest used so far.
    FirstAppearance,
    /// Per base position, the colour to try first.
    Prefer(Vec<Colour>),
}

struct Search<'a> {
    params: &'a HomogeneityParams,
    d: usize,
    current: Colouring,
    free: Vec<usize>,
    ancestors: Vec<Vec<usize>>,
    node_total: Vec<u32>,
    node_assigned: Vec<u32>,
    node_counts: Vec<u32>,
    order: Order,
    budget: u64,
    visits: u64,
}

impl<'a> Search<'a> {
    fn new(base: &Colouring, params: &'a HomogeneityParams, budget: u64, order: Order) -> Self {
        let d = base.d() as usize;
        let set = base.base();
        let j = set.level();
        let mut ancestors = vec![Vec::with_capacity(j as usize + 1); set.len()];
        let mut node_total = Vec::new();
        let mut next_id = 0usize;
        for level in 0..=j {
            let shift = j - level;
            let mut last: Option<u64> = None;
            for (p, &idx) in set.indices().iter().enumerate() {
                let a = idx >> shift;
                if last != Some(a) {
                    last = Some(a);
                    node_total.push(0);
                    next_id += 1;
                }
                let id = next_id - 1;
                node_total[id] += 1;
                ancestors[p].push(id);
            }
        }
        let nodes = node_total.len();
        let mut node_assigned = vec![0u32; nodes];
        let mut node_counts = vec![0u32; nodes * d];
        for (p, c) in base.colours().iter().enumerate() {
            if let Some(c) = c {
                for &a in &ancestors[p] {
                    node_assigned[a] += 1;
                    node_counts[a * d + *c as usize - 1] += 1;
                }
            }
        }
        let free = (0..set.len())
            .filter(|&p| base.colour_at(p).is_none())
            .collect();
        Search {
            params,
            d,
            current: base.clone(),
            free,
            ancestors,
            node_total,
            node_assigned,
            node_counts,
            order,
            budget,
            visits: 0,
        }
    }

    fn candidates(&self, k: usize, max_used: Colour) -> Vec<Colour> {
        let d = self.d as Colour;
        match &self.order {
            Order::Ascending => (1..=d).collect(),
            Order::FirstAppearance => (1..=d.min(max_used + 1)).collect(),
            Order::Prefer(prefs) => {
                let first = prefs[self.free[k]];
                std::iter::once(first)
                    .chain((1..=d).filter(|&c| c != first))
                    .collect()
            }
        }
    }

    fn assign(&mut self, k: usize, colour: Colour) {
        let p = self.free[k];
        self.current.set_at(p, Some(colour));
        for &a in &self.ancestors[p] {
            self.node_assigned[a] += 1;
            self.node_counts[a * self.d + colour as usize - 1] += 1;
        }
    }

    fn unassign(&mut self, k: usize) {
        let p = self.free[k];
        let colour = self.current.colour_at(p).expect("assigned");
        self.current.set_at(p, None);
        for &a in &self.ancestors[p] {
            self.node_assigned[a] -= 1;
            self.node_counts[a * self.d + colour as usize - 1] -= 1;
        }
    }

    /// Can the nodes above free slot `k` still pass after it took `colour`?
    fn viable(&self, k: usize, colour: Colour) -> bool {
        let d = self.d;
        for &a in &self.ancestors[self.free[k]] {
            let row = &self.node_counts[a * d..(a + 1) * d];
            let total = self.node_total[a];
            if total <= d as u32 {
                if row[colour as usize - 1] >= 2 {
                    return false;
                }
            } else {
                let remaining = total - self.node_assigned[a];
                let max = *row.iter().max().unwrap();
                let min = *row.iter().min().unwrap();
                if !self.params.balanced(max, min + remaining) {
                    return false;
                }
            }
        }
        true
    }

    /// Enumerate leaves until `limit` valid ones are found or `visit` returns
    /// `false`. Returns the number of valid leaves seen.
    fn run(&mut self, limit: u64, mut visit: impl FnMut(&Colouring) -> bool) -> Result<u64> {
        let n = self.free.len();
        let mut found = 0u64;
        if limit == 0 {
            return Ok(0);
        }
        if n == 0 {
            if check_homogeneous(&self.current, self.params)?.holds() {
                visit(&self.current);
                found = 1;
            }
            return Ok(found);
        }
        let mut choice = vec![0usize; n];
        let mut max_used = vec![0 as Colour; n + 1];
        let mut cands: Vec<Vec<Colour>> = vec![Vec::new(); n];
        cands[0] = self.candidates(0, 0);
        let mut k = 0usize;
        loop {
            if k == n {
                if check_homogeneous(&self.current, self.params)?.holds() {
                    found += 1;
                    let go_on = visit(&self.current);
                    if !go_on || found >= limit {
                        return Ok(found);
                    }
                }
                k -= 1;
                self.unassign(k);
                choice[k] += 1;
                continue;
            }
            if choice[k] >= cands[k].len() {
                if k == 0 {
                    return Ok(found);
                }
                k -= 1;
                self.unassign(k);
                choice[k] += 1;
                continue;
            }
            self.visits += 1;
            if self.visits > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let colour = cands[k][choice[k]];
            self.assign(k, colour);
            if self.viable(k, colour) {
                max_used[k + 1] = max_used[k].max(colour);
                k += 1;
                if k < n {
                    choice[k] = 0;
                    cands[k] = self.candidates(k, max_used[k]);
                }
            } else {
                self.unassign(k);
                choice[k] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{IntervalSet, Rational};

    fn params(num: u64, den: u64, d: u32) -> HomogeneityParams {
        HomogeneityParams::new(Rational::new(num, den).unwrap(), d).unwrap()
    }

    fn set(level: u32, idx: &[u64]) -> IntervalSet {
        IntervalSet::from_indices(level, idx.iter().copied()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let col = Colouring::from_vec(set(2, &[0, 1]), 3, vec![Some(3), Some(1)]).unwrap();
        let canon = canonicalize(&col).unwrap();
        assert_eq!(canon.colours(), &[Some(1), Some(2)]);
        assert_eq!(canonicalize(&canon).unwrap(), canon);
        let swapped = col.relabelled(&[2, 1, 3]).unwrap();
        assert_eq!(canonicalize(&swapped).unwrap(), canon);
        assert!(canonicalize(&Colouring::uncoloured(set(2, &[0]), 2).unwrap()).is_err());
    }

    #[test]
    fn total_homogeneous_base_has_itself_as_only_witness() {
        let col =
            Colouring::from_vec(set(2, &[0, 1, 3]), 2, vec![Some(1), Some(2), Some(1)]).unwrap();
        let r = oracle_extensions(&col, &params(1, 2, 2), &OracleConfig::default()).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses, vec![col]);
    }

    #[test]
    fn blank_base_of_two_leaves() {
        // Two members, d = 2: hom1 at the root forces distinct colours,
        // giving two extensions and one class up to permutation.
        let col = Colouring::uncoloured(set(2, &[0, 3]), 2).unwrap();
        let r = oracle_extensions(&col, &params(1, 2, 2), &OracleConfig::default()).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.canonical_count, Some(1));
    }

    #[test]
    fn limit_saturates() {
        let col = Colouring::uncoloured(set(3, &[0, 2, 4, 6]), 2).unwrap();
        let cfg = OracleConfig {
            limit: 1,
            ..OracleConfig::default()
        };
        let r = oracle_extensions(&col, &params(1, 2, 2), &cfg).unwrap();
        assert_eq!(r.count, 1);
        assert!(r.saturated);
    }

    #[test]
    fn budget_is_enforced() {
        let col = Colouring::uncoloured(IntervalSet::full(4).unwrap(), 3).unwrap();
        let cfg = OracleConfig {
            budget: 10,
            ..OracleConfig::default()
        };
        assert!(matches!(
            oracle_extensions(&col, &params(1, 2, 3), &cfg),
            Err(Error::BudgetExceeded { budget: 10 })
        ));
    }

    #[test]
    fn admits_exactly_the_valid_candidates() {
        let base =
            Colouring::from_vec(set(3, &[0, 1, 4]), 2, vec![Some(1), Some(2), None]).unwrap();
        let p = params(1, 2, 2);
        for c in 1..=2 {
            let mut cand = base.clone();
            cand.set(&base.base().get(2), c).unwrap();
            let valid = check_homogeneous(&cand, &p).unwrap().holds();
            assert_eq!(
                oracle_admits(&base, &p, &cand, DEFAULT_BUDGET).unwrap(),
                valid
            );
        }
    }
}
