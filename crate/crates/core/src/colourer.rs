//! Extension of an `(η, d)`-homogeneous colouring of `C` to `H = C ∪ U` when
//! the pair `(C, U)` is `d`-previsible.
//!
//! The algorithm runs backwards over the tree levels. With `α = ⌊log2 d⌋` it
//! starts at level `s0 = j - α` (every node there holds at most `d` members
//! of `H`) and climbs to the root. After finishing level `s`, a node `K` on
//! that level has all of `U ∩ K` coloured exactly when `|H ∩ K| ≥ d` and
//! `C ∩ K ≠ ∅`; otherwise `U ∩ K` is still blank. Each node is handled by one
//! of the [`CaseLabel`] procedures, chosen from the four child counts.
//!
//! Choices are deterministic: free colours are taken smallest first and
//! intervals are filled left to right.

use std::fmt;
use std::ops::Range;

use serde::{Serialize, Serializer};

use crate::criteria::{
    check_homogeneous, check_homogeneous_within, check_previsible, colour_modulo_d, node_violation,
    Verdict,
};
use crate::dyadic::{Colour, Colouring, DyadicInterval, HomogeneityParams, IntervalSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    I1,
    I2,
    II1,
    IIA1,
    IIA2,
    IIA3,
    IIA4,
    IIB1,
    IIB2,
    IIB3,
    IIB4,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 11] = [
        CaseLabel::I1,
        CaseLabel::I2,
        CaseLabel::II1,
        CaseLabel::IIA1,
        CaseLabel::IIA2,
        CaseLabel::IIA3,
        CaseLabel::IIA4,
        CaseLabel::IIB1,
        CaseLabel::IIB2,
        CaseLabel::IIB3,
        CaseLabel::IIB4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::I1 => "I.1",
            CaseLabel::I2 => "I.2",
            CaseLabel::II1 => "II.1",
            CaseLabel::IIA1 => "II.2.A.1",
            CaseLabel::IIA2 => "II.2.A.2",
            CaseLabel::IIA3 => "II.2.A.3",
            CaseLabel::IIA4 => "II.2.A.4",
            CaseLabel::IIB1 => "II.2.B.1",
            CaseLabel::IIB2 => "II.2.B.2",
            CaseLabel::IIB3 => "II.2.B.3",
            CaseLabel::IIB4 => "II.2.B.4",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Label of an inductive step from `(|C∩L′|, |C∩L″|, |H∩L′|, |H∩L″|)`.
///
/// The `II.2.B` labels cover both orientations: when `C∩L″ = ∅` instead of
/// `C∩L′ = ∅` the children are read in swapped roles.
pub fn dispatch_case(counts: (u32, u32, u32, u32), d: u32) -> Result<CaseLabel> {
    orient(counts, d).map(|(label, _)| label)
}

/// Label plus whether the procedure runs with `L′` and `L″` swapped.
fn orient(counts: (u32, u32, u32, u32), d: u32) -> Result<(CaseLabel, bool)> {
    let (c1, c2, h1, h2) = counts;
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    if c1 > h1 || c2 > h2 {
        return Err(Error::InconsistentCounts(format!(
            "C-cut exceeds H-cut in {counts:?}"
        )));
    }
    if h1 + h2 < d || c1 + c2 == 0 {
        return Ok((CaseLabel::II1, false));
    }
    if c1 > 0 && c2 > 0 {
        return Ok(match (h1 >= d, h2 >= d) {
            (true, true) => (CaseLabel::IIA1, false),
            (false, false) => (CaseLabel::IIA2, false),
            (false, true) => (CaseLabel::IIA3, false),
            (true, false) => (CaseLabel::IIA4, true),
        });
    }
    let swapped = c1 > 0;
    let (blank, other) = if swapped { (h2, h1) } else { (h1, h2) };
    let label = match (blank >= d, other >= d) {
        (true, true) => CaseLabel::IIB1,
        (false, false) => CaseLabel::IIB2,
        (false, true) => CaseLabel::IIB3,
        (true, false) => CaseLabel::IIB4,
    };
    Ok((label, swapped))
}

/// One node visited by the induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub node: DyadicInterval,
    pub label: CaseLabel,
    /// The procedure ran with the children in swapped roles.
    pub mirrored: bool,
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub colouring: Colouring,
    pub trace: Vec<CaseRecord>,
}

/// Extend `c_col` (total over `C`) to a homogeneous colouring of `C ∪ U`.
pub fn extend_colouring(
    c_col: &Colouring,
    u: &IntervalSet,
    params: &HomogeneityParams,
) -> Result<Colouring> {
    extend_colouring_traced(c_col, u, params).map(|e| e.colouring)
}

/// [`extend_colouring`], also returning the case taken at every visited node.
pub fn extend_colouring_traced(
    c_col: &Colouring,
    u: &IntervalSet,
    params: &HomogeneityParams,
) -> Result<Extension> {
    let c = c_col.base();
    if c.level() != u.level() {
        return Err(Error::LevelMismatch {
            expected: c.level(),
            found: u.level(),
        });
    }
    if let Some(iv) = c.first_common(u) {
        return Err(Error::NotDisjoint(iv));
    }
    if let Verdict::Fails(v) = check_homogeneous(c_col, params)? {
        return Err(Error::Precondition(v));
    }
    if let Verdict::Fails(v) = check_previsible(c, u, params.d())? {
        return Err(Error::Precondition(v));
    }
    if u.is_empty() {
        return Ok(Extension {
            colouring: c_col.clone(),
            trace: Vec::new(),
        });
    }

    let mut work = Work::new(c_col, u, *params)?;
    work.run()?;
    let colouring = work.finish()?;
    if !colouring.preserves(c_col) {
        return Err(Error::InternalBreach("colours of C were altered".into()));
    }
    if let Verdict::Fails(v) = check_homogeneous(&colouring, params)? {
        return Err(Error::InternalBreach(format!(
            "result is not homogeneous: {v}"
        )));
    }
    Ok(Extension {
        colouring,
        trace: work.trace,
    })
}

struct Work {
    params: HomogeneityParams,
    d: u32,
    j: u32,
    h: IntervalSet,
    colours: Vec<Option<Colour>>,
    in_c: Vec<bool>,
    c_prefix: Vec<u32>,
    trace: Vec<CaseRecord>,
}

fn breach(msg: impl Into<String>) -> Error {
    Error::InternalBreach(msg.into())
}

impl Work {
    fn new(c_col: &Colouring, u: &IntervalSet, params: HomogeneityParams) -> Result<Work> {
        let h = c_col.base().union(u)?;
        let mut colours = Vec::with_capacity(h.len());
        let mut in_c = Vec::with_capacity(h.len());
        let mut c_prefix = vec![0];
        for iv in h.iter() {
            let colour = c_col.colour_of(&iv);
            let member = c_col.base().contains(&iv);
            colours.push(colour);
            in_c.push(member);
            c_prefix.push(c_prefix.last().unwrap() + u32::from(member));
        }
        Ok(Work {
            params,
            d: params.d(),
            j: h.level(),
            h,
            colours,
            in_c,
            c_prefix,
            trace: Vec::new(),
        })
    }

    fn range(&self, l: &DyadicInterval) -> Range<usize> {
        self.h.range_within(l)
    }

    fn h_count(&self, l: &DyadicInterval) -> u32 {
        self.range(l).len() as u32
    }

    fn c_count(&self, l: &DyadicInterval) -> u32 {
        let r = self.range(l);
        self.c_prefix[r.end] - self.c_prefix[r.start]
    }

    /// Positions of `U ∩ l`, left to right.
    fn u_positions(&self, l: &DyadicInterval) -> Vec<usize> {
        self.range(l).filter(|&p| !self.in_c[p]).collect()
    }

    /// Colours of `C ∩ l`, left to right.
    fn c_colours(&self, l: &DyadicInterval) -> Result<Vec<Colour>> {
        self.range(l)
            .filter(|&p| self.in_c[p])
            .map(|p| self.colours[p].ok_or_else(|| breach("uncoloured member of C")))
            .collect()
    }

    /// `|H_i ∩ l|` over the coloured members of `l`, indexed by `i - 1`.
    fn colour_counts(&self, l: &DyadicInterval) -> Vec<u32> {
        let mut counts = vec![0; self.d as usize];
        for p in self.range(l) {
            if let Some(c) = self.colours[p] {
                counts[c as usize - 1] += 1;
            }
        }
        counts
    }

    fn nodes_at(&self, level: u32) -> Vec<DyadicInterval> {
        let shift = self.j - level;
        let mut out: Vec<u64> = self.h.indices().iter().map(|i| i >> shift).collect();
        out.dedup();
        out.into_iter()
            .map(|k| DyadicInterval::new(level, k).expect("ancestor of a member"))
            .collect()
    }

    fn paint(&mut self, positions: &[usize], colours: &[Colour]) -> Result<()> {
        if colours.len() < positions.len() {
            return Err(breach(format!(
                "{} colours available for {} intervals",
                colours.len(),
                positions.len()
            )));
        }
        for (&p, &c) in positions.iter().zip(colours) {
            if self.colours[p].is_some() {
                return Err(breach(format!("{} coloured twice", self.h.get(p))));
            }
            self.colours[p] = Some(c);
        }
        Ok(())
    }

    fn record(&mut self, node: DyadicInterval, label: CaseLabel, mirrored: bool) {
        self.trace.push(CaseRecord {
            node,
            label,
            mirrored,
        });
    }

    fn run(&mut self) -> Result<()> {
        let start = self.j.saturating_sub(self.params.alpha());
        for k in self.nodes_at(start) {
            self.stage_start(k)?;
        }
        self.check_stage(start)?;
        for level in (0..start).rev() {
            for l in self.nodes_at(level) {
                self.step(l)?;
            }
            self.check_stage(level)?;
        }
        Ok(())
    }

    /// Nodes on `j - α` hold at most `d` members of `H`.
    fn stage_start(&mut self, k: DyadicInterval) -> Result<()> {
        let (hk, ck) = (self.h_count(&k), self.c_count(&k));
        if hk > self.d {
            return Err(breach(format!(
                "{k} holds {hk} > d members at the start level"
            )));
        }
        if hk == self.d && ck > 0 {
            let free = self.free_colours(&self.c_colours(&k)?)?;
            let us = self.u_positions(&k);
            self.paint(&us, &free)?;
            self.record(k, CaseLabel::I2, false);
            self.verify_subtree(&k)?;
        } else {
            self.record(k, CaseLabel::I1, false);
        }
        Ok(())
    }

    /// Colours `1..=d` not in `used` (which must be repetition-free), ascending.
    fn free_colours(&self, used: &[Colour]) -> Result<Vec<Colour>> {
        let mut taken = vec![false; self.d as usize + 1];
        for &c in used {
            if std::mem::replace(&mut taken[c as usize], true) {
                return Err(breach(format!(
                    "colour {c} repeated where it must be unique"
                )));
            }
        }
        Ok((1..=self.d).filter(|&c| !taken[c as usize]).collect())
    }

    fn step(&mut self, l: DyadicInterval) -> Result<()> {
        let (left, right) = l.children();
        let counts = (
            self.c_count(&left),
            self.c_count(&right),
            self.h_count(&left),
            self.h_count(&right),
        );
        let (label, swapped) = orient(counts, self.d)?;
        let (first, second) = if swapped {
            (right, left)
        } else {
            (left, right)
        };
        self.record(l, label, swapped);
        let blank = |w: &Work, k: &DyadicInterval| w.range(k).any(|p| w.colours[p].is_none());
        let newly = [(first, blank(self, &first)), (second, blank(self, &second))];
        match label {
            CaseLabel::II1 | CaseLabel::IIA1 => {}
            CaseLabel::IIA2 | CaseLabel::IIB2 => self.merge_small(&first, &second)?,
            CaseLabel::IIA3 | CaseLabel::IIA4 | CaseLabel::IIB3 => {
                self.fill_light(&first, &second)?
            }
            CaseLabel::IIB1 => self.modulo_fill(&first, None)?,
            CaseLabel::IIB4 => self.fill_heavy_blank(&first, &second)?,
            CaseLabel::I1 | CaseLabel::I2 => unreachable!("start labels are not dispatched"),
        }
        if label != CaseLabel::II1 {
            self.verify_node(&l)?;
            for (child, was_blank) in newly {
                if was_blank && self.h_count(&child) > 0 {
                    self.verify_subtree(&child)?;
                }
            }
        }
        Ok(())
    }

    /// Both children hold fewer than `d` members; all of `U ∩ L` is blank.
    ///
    /// Colours are relabelled so `C ∩ L′` uses `1..m` and `C ∩ L″` uses
    /// `m+1..m+n` (or, when `m + n ≥ d`, `m+1..d` and the overlap `1..m+n-d`),
    /// the canonical fill runs, and the relabelling is undone.
    fn merge_small(&mut self, first: &DyadicInterval, second: &DyadicInterval) -> Result<()> {
        let d = self.d;
        let a = self.c_colours(first)?;
        let b = self.c_colours(second)?;
        // Repetition check: hom1 holds for C in each small child.
        self.free_colours(&a)?;
        self.free_colours(&b)?;
        let (m, n) = (a.len() as u32, b.len() as u32);
        let u1 = self.u_positions(first);
        let u2 = self.u_positions(second);
        let x = u1.len() as u32;
        let mut in_a = vec![false; d as usize + 1];
        let mut in_b = vec![false; d as usize + 1];
        a.iter().for_each(|&c| in_a[c as usize] = true);
        b.iter().for_each(|&c| in_b[c as usize] = true);
        let sorted = |pred: &dyn Fn(Colour) -> bool| -> Vec<Colour> {
            (1..=d).filter(|&c| pred(c)).collect()
        };

        let (pi, canon_first, canon_second): (Vec<Colour>, Vec<Colour>, Vec<Colour>) = if m + n < d
        {
            if a.iter().any(|&c| in_b[c as usize]) {
                return Err(breach("children share a colour although |C ∩ L| < d"));
            }
            let mut pi = sorted(&|c| in_a[c as usize]);
            pi.extend(sorted(&|c| in_b[c as usize]));
            pi.extend(sorted(&|c| !in_a[c as usize] && !in_b[c as usize]));
            let first: Vec<Colour> = (m + n + 1..=d).chain(m + 1..=m + n).collect();
            let second: Vec<Colour> = if m + n + x < d {
                (m + n + x + 1..=d)
                    .chain(1..=m)
                    .chain(m + n + 1..=m + n + x)
                    .collect()
            } else {
                // Any y colours outside C ∩ L'' will do; those of U ∩ L' come
                // first, which gives both blank halves the same colours.
                (m + n + 1..=d).chain(1..=m).collect()
            };
            (pi, first, second)
        } else {
            let mut pi = sorted(&|c| in_a[c as usize] && in_b[c as usize]);
            if pi.len() as u32 != m + n - d {
                return Err(breach("colours of C ∩ L do not cover 1..=d"));
            }
            pi.extend(sorted(&|c| in_a[c as usize] && !in_b[c as usize]));
            pi.extend(sorted(&|c| !in_a[c as usize] && in_b[c as usize]));
            let first: Vec<Colour> = (m + 1..=d).collect();
            let second: Vec<Colour> = (m + n - d + 1..=m).collect();
            (pi, first, second)
        };
        if pi.len() != d as usize {
            return Err(breach("relabelling is not a bijection"));
        }
        let actual = |canon: &[Colour]| -> Vec<Colour> {
            canon.iter().map(|&c| pi[c as usize - 1]).collect()
        };
        self.paint(&u1, &actual(&canon_first))?;
        self.paint(&u2, &actual(&canon_second))?;
        Ok(())
    }

    /// `light` holds fewer than `d` members, `heavy` at least `d` with
    /// `U ∩ heavy = ∅`. Blank intervals of `light` take the colours missing
    /// from `C ∩ light`, those rarest in `heavy` first.
    fn fill_light(&mut self, light: &DyadicInterval, heavy: &DyadicInterval) -> Result<()> {
        if !self.u_positions(heavy).is_empty() {
            return Err(breach(format!(
                "previsibility should leave {heavy} free of U"
            )));
        }
        let us = self.u_positions(light);
        if us.is_empty() {
            return Ok(());
        }
        let present = self.c_colours(light)?;
        let heavy_counts = self.colour_counts(heavy);
        let mut t = self.free_colours(&present)?;
        t.sort_by_key(|&c| (heavy_counts[c as usize - 1], c));
        let x = us.len();
        if x >= t.len() {
            return Err(breach("not enough unused colours in the light child"));
        }
        self.paint(&us, &t)?;

        // If t_x became the strict maximum over t_{d-m}, the heavy counts of
        // t_x..t_{d-m} must all agree.
        let l_counts = self.colour_counts(&light.parent().expect("child"));
        let tx = t[x - 1];
        let tlast = *t.last().unwrap();
        if l_counts[tx as usize - 1] > l_counts[tlast as usize - 1]
            && t[x - 1..]
                .iter()
                .any(|&c| heavy_counts[c as usize - 1] != heavy_counts[tx as usize - 1])
        {
            return Err(breach("ordering of unused colours is inconsistent"));
        }
        Ok(())
    }

    /// Colour every blank interval of `k` cyclically.
    fn modulo_fill(&mut self, k: &DyadicInterval, order: Option<&[Colour]>) -> Result<()> {
        let us = self.u_positions(k);
        if us.len() != self.h_count(k) as usize {
            return Err(breach(format!("{k} should hold only blank intervals")));
        }
        let sub = IntervalSet::from_indices(self.j, us.iter().map(|&p| self.h.indices()[p]))?;
        let cyc = colour_modulo_d(&sub, self.d, order)?;
        let colours: Vec<Colour> = cyc.colours().iter().map(|c| c.unwrap()).collect();
        self.paint(&us, &colours)
    }

    /// `blank` has no `C` and at least `d` members; `light` has fewer than `d`.
    fn fill_heavy_blank(&mut self, blank: &DyadicInterval, light: &DyadicInterval) -> Result<()> {
        let free = self.free_colours(&self.c_colours(light)?)?;
        let us = self.u_positions(light);
        self.paint(&us, &free)?;
        let counts = self.colour_counts(light);
        let order: Vec<Colour> = (1..=self.d)
            .filter(|&c| counts[c as usize - 1] == 0)
            .chain((1..=self.d).filter(|&c| counts[c as usize - 1] > 0))
            .collect();
        self.modulo_fill(blank, Some(&order))
    }

    /// Inequality (b3) at a node whose members are now all coloured.
    fn verify_node(&self, l: &DyadicInterval) -> Result<()> {
        if self.range(l).any(|p| self.colours[p].is_none()) {
            return Err(breach(format!("{l} left partially coloured")));
        }
        let counts = self.colour_counts(l);
        if counts.contains(&0) {
            return Err(breach(format!("{l} misses a colour")));
        }
        if let Some(v) = node_violation(&counts, &self.params, *l) {
            return Err(breach(format!("{v}")));
        }
        Ok(())
    }

    fn verify_subtree(&self, k: &DyadicInterval) -> Result<()> {
        let r = self.range(k);
        if self.colours[r.clone()].iter().any(Option::is_none) {
            return Err(breach(format!("{k} left partially coloured")));
        }
        let sub = IntervalSet::from_indices(self.j, self.h.indices()[r.clone()].to_vec())?;
        let col = Colouring::from_vec(sub, self.d, self.colours[r].to_vec())?;
        match check_homogeneous_within(&col, &self.params, k)? {
            Verdict::Holds => Ok(()),
            Verdict::Fails(v) => Err(breach(format!("{v}"))),
        }
    }

    /// After finishing `level`: `U ∩ K` is fully coloured iff
    /// `|H ∩ K| ≥ d` and `C ∩ K ≠ ∅`, and untouched otherwise.
    fn check_stage(&self, level: u32) -> Result<()> {
        for k in self.nodes_at(level) {
            let expect = self.h_count(&k) >= self.d && self.c_count(&k) > 0;
            let us = self.u_positions(&k);
            let coloured = us.iter().filter(|&&p| self.colours[p].is_some()).count();
            let ok = if expect {
                coloured == us.len()
            } else {
                coloured == 0
            };
            if !ok {
                return Err(breach(format!(
                    "stage {level}: {k} has {coloured}/{} of U coloured",
                    us.len()
                )));
            }
        }
        Ok(())
    }

    /// Colour what the induction left blank at the root.
    fn finish(&mut self) -> Result<Colouring> {
        let root = DyadicInterval::ROOT;
        let us = self.u_positions(&root);
        if us.iter().any(|&p| self.colours[p].is_none()) {
            if self.h.len() < self.d as usize {
                let free = self.free_colours(&self.c_colours(&root)?)?;
                self.paint(&us, &free)?;
            } else if self.c_count(&root) == 0 {
                self.modulo_fill(&root, None)?;
            } else {
                return Err(breach("root left blank with |H| ≥ d and C ≠ ∅"));
            }
        }
        Colouring::from_vec(self.h.clone(), self.d, self.colours.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Rational;

    fn params(num: u64, den: u64, d: u32) -> HomogeneityParams {
        HomogeneityParams::new(Rational::new(num, den).unwrap(), d).unwrap()
    }

    fn set(level: u32, idx: &[u64]) -> IntervalSet {
        IntervalSet::from_indices(level, idx.iter().copied()).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(dispatch_case((1, 1, 1, 1), 3).unwrap(), CaseLabel::II1);
        assert_eq!(dispatch_case((1, 2, 2, 3), 3).unwrap(), CaseLabel::IIA3);
        assert_eq!(dispatch_case((0, 1, 4, 1), 3).unwrap(), CaseLabel::IIB4);
        assert_eq!(dispatch_case((1, 0, 1, 4), 3).unwrap(), CaseLabel::IIB4);
        assert_eq!(dispatch_case((2, 1, 3, 2), 3).unwrap(), CaseLabel::IIA4);
        assert_eq!(dispatch_case((2, 2, 3, 3), 3).unwrap(), CaseLabel::IIA1);
        assert_eq!(dispatch_case((1, 1, 2, 2), 3).unwrap(), CaseLabel::IIA2);
        assert_eq!(dispatch_case((0, 3, 3, 3), 3).unwrap(), CaseLabel::IIB1);
        assert_eq!(dispatch_case((0, 1, 2, 2), 3).unwrap(), CaseLabel::IIB2);
        assert_eq!(dispatch_case((0, 3, 2, 3), 3).unwrap(), CaseLabel::IIB3);
        assert_eq!(dispatch_case((0, 0, 4, 4), 3).unwrap(), CaseLabel::II1);
        assert!(matches!(
            dispatch_case((2, 0, 1, 0), 3),
            Err(Error::InconsistentCounts(_))
        ));
    }

    #[test]
    fn dispatch_is_total() {
        for d in 1..6 {
            for h1 in 0..8 {
                for h2 in 0..8 {
                    for c1 in 0..=h1 {
                        for c2 in 0..=h2 {
                            assert!(dispatch_case((c1, c2, h1, h2), d).is_ok());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_u_returns_input() {
        let c = colour_modulo_d(&set(3, &[0, 3, 5]), 2, None).unwrap();
        let out = extend_colouring(&c, &IntervalSet::empty(3).unwrap(), &params(1, 2, 2)).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn small_previsible_example() {
        let c = Colouring::from_vec(set(3, &[0, 1]), 2, vec![Some(1), Some(2)]).unwrap();
        let out = extend_colouring(&c, &set(3, &[4]), &params(1, 2, 2)).unwrap();
        assert!(out.preserves(&c));
        assert!(check_homogeneous(&out, &params(1, 2, 2)).unwrap().holds());
    }

    #[test]
    fn rejects_non_previsible_input() {
        let c = Colouring::from_vec(set(3, &[0]), 2, vec![Some(1)]).unwrap();
        let err = extend_colouring(&c, &set(3, &[1]), &params(1, 2, 2)).unwrap_err();
        assert_eq!(
            err.violation().unwrap().kind,
            crate::criteria::ViolationKind::Previs
        );
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let c = Colouring::from_vec(set(2, &[0, 1]), 2, vec![Some(1), Some(1)]).unwrap();
        let err = extend_colouring(&c, &set(2, &[3]), &params(1, 2, 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn root_with_fewer_than_d_members() {
        let c = Colouring::from_vec(set(3, &[2]), 4, vec![Some(3)]).unwrap();
        let out = extend_colouring(&c, &set(3, &[0, 7]), &params(1, 2, 4)).unwrap();
        assert_eq!(out.colours(), &[Some(1), Some(3), Some(2)]);
    }

    #[test]
    fn blank_c_gets_modulo_colouring() {
        let c = Colouring::uncoloured(IntervalSet::empty(3).unwrap(), 2).unwrap();
        let u = set(3, &[0, 1, 2, 6, 7]);
        let out = extend_colouring(&c, &u, &params(1, 3, 2)).unwrap();
        assert_eq!(out, colour_modulo_d(&u, 2, None).unwrap());
    }
}
