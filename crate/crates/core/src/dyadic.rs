//! Dyadic intervals as `(level, index)` nodes of the binary tree over `[0, 1]`,
//! same-level collections, partial colourings and per-node colour counts.
//!
//! No endpoint arithmetic is ever done in floating point: an interval is the
//! pair `(j, k)` denoting `[k 2^-j, (k+1) 2^-j]`, and inclusion is a shift.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest level accepted by default; indices then fit in 32 bits.
pub const DEFAULT_MAX_LEVEL: u32 = 30;

/// A colour label in `1..=d`.
pub type Colour = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct DyadicInterval {
    level: u32,
    index: u64,
}

#[derive(Deserialize)]
struct RawInterval {
    level: u32,
    index: u64,
}

impl TryFrom<RawInterval> for DyadicInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        DyadicInterval::new(raw.level, raw.index)
    }
}

impl DyadicInterval {
    pub const ROOT: DyadicInterval = DyadicInterval { level: 0, index: 0 };

    pub fn new(level: u32, index: u64) -> Result<Self> {
        if level > DEFAULT_MAX_LEVEL {
            return Err(Error::LevelTooLarge {
                level,
                max: DEFAULT_MAX_LEVEL,
            });
        }
        if index >= 1u64 << level {
            return Err(Error::IndexOutOfRange { level, index });
        }
        Ok(DyadicInterval { level, index })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Left and right halves.
    pub fn children(&self) -> (DyadicInterval, DyadicInterval) {
        let level = self.level + 1;
        (
            DyadicInterval {
                level,
                index: self.index << 1,
            },
            DyadicInterval {
                level,
                index: (self.index << 1) | 1,
            },
        )
    }

    pub fn parent(&self) -> Option<DyadicInterval> {
        (self.level > 0).then(|| DyadicInterval {
            level: self.level - 1,
            index: self.index >> 1,
        })
    }

    /// The dyadic brother inside the parent.
    pub fn sibling(&self) -> Option<DyadicInterval> {
        (self.level > 0).then_some(DyadicInterval {
            level: self.level,
            index: self.index ^ 1,
        })
    }

    pub fn is_left_child(&self) -> bool {
        self.level > 0 && self.index & 1 == 0
    }

    /// The unique ancestor (or self) on `level`.
    pub fn ancestor(&self, level: u32) -> Option<DyadicInterval> {
        (level <= self.level).then(|| DyadicInterval {
            level,
            index: self.index >> (self.level - level),
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &DyadicInterval) -> bool {
        other.level >= self.level && other.index >> (other.level - self.level) == self.index
    }

    /// Indices on `level` of the intervals contained in `self`.
    pub fn span_at(&self, level: u32) -> Range<u64> {
        debug_assert!(level >= self.level);
        let shift = level - self.level;
        (self.index << shift)..((self.index + 1) << shift)
    }

    /// Reflection `x ↦ 1 - x` of the unit interval.
    pub fn mirror(&self) -> DyadicInterval {
        DyadicInterval {
            level: self.level,
            index: (1u64 << self.level) - 1 - self.index,
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.index)
    }
}

/// `children` as a free function, mirroring the tree vocabulary.
pub fn children(l: &DyadicInterval) -> (DyadicInterval, DyadicInterval) {
    l.children()
}

/// `i ⊆ l`.
pub fn contains(l: &DyadicInterval, i: &DyadicInterval) -> bool {
    l.contains(i)
}

/// A positive rational in lowest terms, compared by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRational")]
pub struct Rational {
    num: u64,
    den: u64,
}

#[derive(Deserialize)]
struct RawRational {
    num: u64,
    den: u64,
}

impl TryFrom<RawRational> for Rational {
    type Error = Error;

    fn try_from(raw: RawRational) -> Result<Self> {
        Rational::new(raw.num, raw.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidRational { num, den });
        }
        let g = gcd(num, den);
        Ok(Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `self · a ≤ b`, exactly.
    pub fn scaled_le(&self, a: u64, b: u64) -> bool {
        u128::from(self.num) * u128::from(a) <= u128::from(self.den) * u128::from(b)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `(η, d)` with `0 < η ≤ 1/2` and `d ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityParams {
    eta: Rational,
    d: u32,
}

impl HomogeneityParams {
    pub fn new(eta: Rational, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        if eta > Rational::new(1, 2)? {
            return Err(Error::InvalidParams(format!("eta = {eta} exceeds 1/2")));
        }
        Ok(HomogeneityParams { eta, d })
    }

    pub fn eta(&self) -> Rational {
        self.eta
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Largest `α` with `2^α ≤ d`.
    pub fn alpha(&self) -> u32 {
        31 - self.d.leading_zeros()
    }

    /// The balance inequality `η · max ≤ min`.
    pub fn balanced(&self, max: u32, min: u32) -> bool {
        self.eta.scaled_le(u64::from(max), u64::from(min))
    }
}

/// A duplicate-free collection of intervals of one level, in index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    level: u32,
    indices: Vec<u64>,
}

impl IntervalSet {
    pub fn empty(level: u32) -> Result<Self> {
        if level > DEFAULT_MAX_LEVEL {
            return Err(Error::LevelTooLarge {
                level,
                max: DEFAULT_MAX_LEVEL,
            });
        }
        Ok(IntervalSet {
            level,
            indices: Vec::new(),
        })
    }

    /// All of `D_level`.
    pub fn full(level: u32) -> Result<Self> {
        let mut set = Self::empty(level)?;
        set.indices = (0..1u64 << level).collect();
        Ok(set)
    }

    pub fn from_indices(level: u32, indices: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::empty(level)?;
        set.indices = indices.into_iter().collect();
        set.indices.sort_unstable();
        for w in set.indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Duplicate(DyadicInterval::new(level, w[0])?));
            }
        }
        if let Some(&last) = set.indices.last() {
            DyadicInterval::new(level, last)?;
        }
        Ok(set)
    }

    pub fn from_intervals(
        level: u32,
        intervals: impl IntoIterator<Item = DyadicInterval>,
    ) -> Result<Self> {
        let mut indices = Vec::new();
        for iv in intervals {
            if iv.level != level {
                return Err(Error::MixedLevels {
                    expected: level,
                    interval: iv,
                });
            }
            indices.push(iv.index);
        }
        Self::from_indices(level, indices)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn get(&self, pos: usize) -> DyadicInterval {
        DyadicInterval {
            level: self.level,
            index: self.indices[pos],
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = DyadicInterval> + '_ {
        let level = self.level;
        self.indices
            .iter()
            .map(move |&index| DyadicInterval { level, index })
    }

    pub fn position(&self, iv: &DyadicInterval) -> Option<usize> {
        if iv.level != self.level {
            return None;
        }
        self.indices.binary_search(&iv.index).ok()
    }

    pub fn contains(&self, iv: &DyadicInterval) -> bool {
        self.position(iv).is_some()
    }

    /// Positions of the members contained in `l` (a contiguous run).
    pub fn range_within(&self, l: &DyadicInterval) -> Range<usize> {
        if l.level > self.level {
            return 0..0;
        }
        let span = l.span_at(self.level);
        let lo = self.indices.partition_point(|&i| i < span.start);
        let hi = self.indices.partition_point(|&i| i < span.end);
        lo..hi
    }

    /// `|self ∩ l|`.
    pub fn count_in(&self, l: &DyadicInterval) -> usize {
        self.range_within(l).len()
    }

    fn check_level(&self, other: &IntervalSet) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        Ok(())
    }

    /// First common member, if any.
    pub fn first_common(&self, other: &IntervalSet) -> Option<DyadicInterval> {
        let (mut a, mut b) = (0, 0);
        while a < self.len() && b < other.len() {
            match self.indices[a].cmp(&other.indices[b]) {
                Ordering::Less => a += 1,
                Ordering::Greater => b += 1,
                Ordering::Equal => return Some(self.get(a)),
            }
        }
        None
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.level != other.level || self.first_common(other).is_none()
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.level == other.level && self.iter().all(|iv| other.contains(&iv))
    }

    pub fn union(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_level(other)?;
        let mut indices: Vec<u64> = self.indices.iter().chain(&other.indices).copied().collect();
        indices.sort_unstable();
        indices.dedup();
        Ok(IntervalSet {
            level: self.level,
            indices,
        })
    }

    pub fn difference(&self, other: &IntervalSet) -> Result<IntervalSet> {
        self.check_level(other)?;
        Ok(IntervalSet {
            level: self.level,
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|i| other.indices.binary_search(i).is_err())
                .collect(),
        })
    }

    pub fn mirror(&self) -> IntervalSet {
        let top = (1u64 << self.level) - 1;
        let mut indices: Vec<u64> = self.indices.iter().map(|i| top - i).collect();
        indices.reverse();
        IntervalSet {
            level: self.level,
            indices,
        }
    }
}

/// A partial map from the members of `base` to colours `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colouring {
    base: IntervalSet,
    colours: Vec<Option<Colour>>,
    d: u32,
}

impl Colouring {
    pub fn uncoloured(base: IntervalSet, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        let colours = vec![None; base.len()];
        Ok(Colouring { base, colours, d })
    }

    pub fn from_assignments(
        base: IntervalSet,
        d: u32,
        assignments: impl IntoIterator<Item = (DyadicInterval, Colour)>,
    ) -> Result<Self> {
        let mut col = Self::uncoloured(base, d)?;
        for (iv, c) in assignments {
            col.set(&iv, c)?;
        }
        Ok(col)
    }

    /// Colours given in member order; `None` leaves a member uncoloured.
    pub fn from_vec(base: IntervalSet, d: u32, colours: Vec<Option<Colour>>) -> Result<Self> {
        if colours.len() != base.len() {
            return Err(Error::Malformed(format!(
                "{} colours for {} intervals",
                colours.len(),
                base.len()
            )));
        }
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        for &c in colours.iter().flatten() {
            if c == 0 || c > d {
                return Err(Error::ColourOutOfRange { colour: c, d });
            }
        }
        Ok(Colouring { base, colours, d })
    }

    pub fn base(&self) -> &IntervalSet {
        &self.base
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn level(&self) -> u32 {
        self.base.level
    }

    pub fn colours(&self) -> &[Option<Colour>] {
        &self.colours
    }

    pub fn colour_at(&self, pos: usize) -> Option<Colour> {
        self.colours[pos]
    }

    pub fn colour_of(&self, iv: &DyadicInterval) -> Option<Colour> {
        self.base.position(iv).and_then(|p| self.colours[p])
    }

    pub fn set(&mut self, iv: &DyadicInterval, colour: Colour) -> Result<()> {
        if colour == 0 || colour > self.d {
            return Err(Error::ColourOutOfRange { colour, d: self.d });
        }
        let pos = self.base.position(iv).ok_or(Error::NotAMember(*iv))?;
        self.colours[pos] = Some(colour);
        Ok(())
    }

    pub(crate) fn set_at(&mut self, pos: usize, colour: Option<Colour>) {
        debug_assert!(colour.is_none_or(|c| (1..=self.d).contains(&c)));
        self.colours[pos] = colour;
    }

    pub fn uncoloured_count(&self) -> usize {
        self.colours.iter().filter(|c| c.is_none()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    pub fn require_total(&self) -> Result<()> {
        match self.uncoloured_count() {
            0 => Ok(()),
            uncoloured => Err(Error::PartialColouring { uncoloured }),
        }
    }

    /// `(interval, colour)` for every coloured member, left to right.
    pub fn assignments(&self) -> impl Iterator<Item = (DyadicInterval, Colour)> + '_ {
        self.base
            .iter()
            .zip(&self.colours)
            .filter_map(|(iv, c)| c.map(|c| (iv, c)))
    }

    /// Members still lacking a colour.
    pub fn uncoloured_set(&self) -> IntervalSet {
        IntervalSet {
            level: self.base.level,
            indices: self
                .base
                .indices
                .iter()
                .zip(&self.colours)
                .filter(|(_, c)| c.is_none())
                .map(|(&i, _)| i)
                .collect(),
        }
    }

    /// Members that carry a colour.
    pub fn coloured_set(&self) -> IntervalSet {
        IntervalSet {
            level: self.base.level,
            indices: self
                .base
                .indices
                .iter()
                .zip(&self.colours)
                .filter(|(_, c)| c.is_some())
                .map(|(&i, _)| i)
                .collect(),
        }
    }

    /// The same colouring over `base ∪ extra`, new members uncoloured.
    pub fn extended(&self, extra: &IntervalSet) -> Result<Colouring> {
        let base = self.base.union(extra)?;
        let colours = base.iter().map(|iv| self.colour_of(&iv)).collect();
        Ok(Colouring {
            base,
            colours,
            d: self.d,
        })
    }

    /// The colouring restricted to `sub ⊆ base`.
    pub fn restricted(&self, sub: &IntervalSet) -> Result<Colouring> {
        let mut colours = Vec::with_capacity(sub.len());
        for iv in sub.iter() {
            let pos = self.base.position(&iv).ok_or(Error::NotAMember(iv))?;
            colours.push(self.colours[pos]);
        }
        Ok(Colouring {
            base: sub.clone(),
            colours,
            d: self.d,
        })
    }

    /// `true` when every coloured member of `earlier` keeps its colour here.
    pub fn preserves(&self, earlier: &Colouring) -> bool {
        earlier
            .assignments()
            .all(|(iv, c)| self.colour_of(&iv) == Some(c))
    }

    /// Apply `perm[c - 1]` to every colour `c`.
    pub fn relabelled(&self, perm: &[Colour]) -> Result<Colouring> {
        let mut seen = vec![false; self.d as usize];
        if perm.len() != self.d as usize {
            return Err(Error::InvalidParams(format!(
                "permutation of length {} for d = {}",
                perm.len(),
                self.d
            )));
        }
        for &c in perm {
            if c == 0 || c > self.d || std::mem::replace(&mut seen[c as usize - 1], true) {
                return Err(Error::InvalidParams("not a permutation of 1..=d".into()));
            }
        }
        Ok(Colouring {
            base: self.base.clone(),
            colours: self
                .colours
                .iter()
                .map(|c| c.map(|c| perm[c as usize - 1]))
                .collect(),
            d: self.d,
        })
    }

    pub fn mirror(&self) -> Colouring {
        let mut colours = self.colours.clone();
        colours.reverse();
        Colouring {
            base: self.base.mirror(),
            colours,
            d: self.d,
        }
    }
}

/// Colour counts of a colouring inside one testing interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    /// Entry `i` counts members of colour `i + 1`.
    pub counts: Vec<u32>,
    pub uncoloured: u32,
}

impl CountTable {
    pub fn total(&self) -> u32 {
        self.counts.iter().sum::<u32>() + self.uncoloured
    }

    /// `(max, argmax, min, argmin)`, ties to the smallest colour.
    pub fn extremes(&self) -> (u32, Colour, u32, Colour) {
        let mut hi = (0u32, 1 as Colour);
        let mut lo = (u32::MAX, 1 as Colour);
        for (i, &c) in self.counts.iter().enumerate() {
            if c > hi.0 {
                hi = (c, i as Colour + 1);
            }
            if c < lo.0 {
                lo = (c, i as Colour + 1);
            }
        }
        (hi.0, hi.1, lo.0, lo.1)
    }
}

/// Fibre counts `|C_i ∩ l|` plus the uncoloured count.
pub fn count_table(col: &Colouring, l: &DyadicInterval) -> Result<CountTable> {
    if l.level > col.level() {
        return Err(Error::LevelMismatch {
            expected: col.level(),
            found: l.level,
        });
    }
    let mut table = CountTable {
        counts: vec![0; col.d as usize],
        uncoloured: 0,
    };
    for c in &col.colours[col.base.range_within(l)] {
        match c {
            Some(c) => table.counts[*c as usize - 1] += 1,
            None => table.uncoloured += 1,
        }
    }
    Ok(table)
}

/// Per-node slot counts, aggregated bottom-up over the nonempty nodes of
/// every level `0..=j`.
///
/// Each member of the base set falls into one of `slots` slots; a node's row
/// is the slot-wise sum over the members it contains. Only nodes with at
/// least one member are stored.
#[derive(Clone, Debug)]
pub struct CountTree {
    slots: usize,
    levels: Vec<TreeLevel>,
}

#[derive(Clone, Debug, Default)]
struct TreeLevel {
    indices: Vec<u64>,
    rows: Vec<u32>,
}

impl CountTree {
    pub fn build(base: &IntervalSet, slots: usize, slot_of: impl Fn(usize) -> usize) -> CountTree {
        let depth = base.level as usize;
        let mut levels = vec![TreeLevel::default(); depth + 1];
        {
            let leaf = &mut levels[depth];
            leaf.indices = base.indices.clone();
            leaf.rows = vec![0; base.len() * slots];
            for pos in 0..base.len() {
                leaf.rows[pos * slots + slot_of(pos)] += 1;
            }
        }
        for l in (0..depth).rev() {
            let (upper, lower) = levels.split_at_mut(l + 1);
            let child = &lower[0];
            let node = &mut upper[l];
            for (k, &idx) in child.indices.iter().enumerate() {
                let parent = idx >> 1;
                if node.indices.last() != Some(&parent) {
                    node.indices.push(parent);
                    node.rows.extend(std::iter::repeat_n(0, slots));
                }
                let start = node.rows.len() - slots;
                for s in 0..slots {
                    node.rows[start + s] += child.rows[k * slots + s];
                }
            }
        }
        CountTree { slots, levels }
    }

    /// Tree of colour counts: slots `0..d` for colours, slot `d` for uncoloured.
    pub fn of_colouring(col: &Colouring) -> CountTree {
        let d = col.d as usize;
        CountTree::build(&col.base, d + 1, |p| match col.colours[p] {
            Some(c) => c as usize - 1,
            None => d,
        })
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Row of `l`, or `None` when `l` holds no members.
    pub fn row(&self, l: &DyadicInterval) -> Option<&[u32]> {
        let level = self.levels.get(l.level as usize)?;
        let k = level.indices.binary_search(&l.index).ok()?;
        Some(&level.rows[k * self.slots..(k + 1) * self.slots])
    }

    /// Row of `l`, zero-filled when empty.
    pub fn row_or_zero(&self, l: &DyadicInterval) -> Vec<u32> {
        self.row(l)
            .map(<[u32]>::to_vec)
            .unwrap_or_else(|| vec![0; self.slots])
    }

    /// Nonempty nodes of `level`, left to right.
    pub fn nodes(&self, level: u32) -> impl Iterator<Item = (DyadicInterval, &[u32])> + '_ {
        let slots = self.slots;
        let lv = &self.levels[level as usize];
        lv.indices
            .iter()
            .zip(lv.rows.chunks_exact(slots.max(1)))
            .map(move |(&index, row)| (DyadicInterval { level, index }, row))
    }

    /// Nonempty nodes top-down, each level left to right: the `(level, index)` order.
    pub fn all_nodes(&self) -> impl Iterator<Item = (DyadicInterval, &[u32])> + '_ {
        (0..self.levels.len() as u32).flat_map(move |l| self.nodes(l))
    }
}

impl Colouring {
    /// [`count_table`] served from a precomputed tree.
    pub fn table_from(&self, tree: &CountTree, l: &DyadicInterval) -> CountTable {
        let row = tree.row_or_zero(l);
        let d = self.d as usize;
        CountTable {
            counts: row[..d].to_vec(),
            uncoloured: row[d],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(level: u32, index: u64) -> DyadicInterval {
        DyadicInterval::new(level, index).unwrap()
    }

    #[test]
    fn children_examples() {
        assert_eq!(iv(0, 0).children(), (iv(1, 0), iv(1, 1)));
        assert_eq!(iv(2, 3).children(), (iv(3, 6), iv(3, 7)));
        let (a, b) = iv(5, 17).parent().unwrap().children();
        assert!(a == iv(5, 17) || b == iv(5, 17));
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&iv(1, 0), &iv(3, 2)));
        assert!(!contains(&iv(1, 1), &iv(3, 2)));
        assert!(contains(&iv(2, 1), &iv(2, 1)));
        assert!(!iv(3, 2).contains(&iv(1, 0)));
    }

    #[test]
    fn contains_is_a_partial_order() {
        let all: Vec<_> = (0..=4u32)
            .flat_map(|l| (0..1u64 << l).map(move |k| iv(l, k)))
            .collect();
        for a in &all {
            assert!(a.contains(a));
            for b in &all {
                if a.contains(b) && b.contains(a) {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if a.contains(b) && b.contains(c) {
                        assert!(a.contains(c));
                    }
                }
            }
        }
    }

    #[test]
    fn interval_bounds_are_checked() {
        assert!(DyadicInterval::new(2, 4).is_err());
        assert!(DyadicInterval::new(31, 0).is_err());
        assert!(DyadicInterval::new(30, (1 << 30) - 1).is_ok());
    }

    #[test]
    fn rational_is_reduced_and_ordered() {
        let r = Rational::new(2, 4).unwrap();
        assert_eq!((r.num(), r.den()), (1, 2));
        assert!(Rational::new(1, 3).unwrap() < r);
        assert!(Rational::new(0, 3).is_err());
        assert!(r.scaled_le(2, 1));
        assert!(!r.scaled_le(3, 1));
    }

    #[test]
    fn params_reject_large_eta() {
        assert!(HomogeneityParams::new(Rational::new(2, 3).unwrap(), 2).is_err());
        assert!(HomogeneityParams::new(Rational::new(1, 2).unwrap(), 0).is_err());
        let p = HomogeneityParams::new(Rational::new(1, 2).unwrap(), 5).unwrap();
        assert_eq!(p.alpha(), 2);
    }

    #[test]
    fn interval_set_rejects_bad_input() {
        assert!(matches!(
            IntervalSet::from_indices(2, [1, 1]),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(
            IntervalSet::from_intervals(2, [iv(2, 0), iv(3, 0)]),
            Err(Error::MixedLevels { .. })
        ));
        assert!(IntervalSet::from_indices(2, [4]).is_err());
        let s = IntervalSet::from_indices(3, [5, 0, 2]).unwrap();
        assert_eq!(s.indices(), &[0, 2, 5]);
    }

    #[test]
    fn count_table_examples() {
        let base = IntervalSet::from_indices(2, [0, 1]).unwrap();
        let col = Colouring::from_vec(base, 2, vec![Some(1), Some(2)]).unwrap();
        let t = count_table(&col, &DyadicInterval::ROOT).unwrap();
        assert_eq!((t.counts.clone(), t.uncoloured), (vec![1, 1], 0));
        let t = count_table(&col, &iv(1, 1)).unwrap();
        assert_eq!((t.counts, t.uncoloured), (vec![0, 0], 0));

        let base = IntervalSet::from_indices(3, [0, 1, 4]).unwrap();
        let col = Colouring::from_vec(base, 2, vec![Some(1), Some(1), None]).unwrap();
        let t = count_table(&col, &DyadicInterval::ROOT).unwrap();
        assert_eq!((t.counts, t.uncoloured), (vec![2, 0], 1));
        assert!(count_table(&col, &iv(4, 0)).is_err());
    }

    #[test]
    fn count_tree_matches_direct_counts() {
        let base = IntervalSet::from_indices(4, [0, 3, 4, 9, 10, 15]).unwrap();
        let col = Colouring::from_vec(
            base,
            3,
            vec![Some(1), Some(2), None, Some(3), Some(1), Some(1)],
        )
        .unwrap();
        let tree = CountTree::of_colouring(&col);
        for l in 0..=4u32 {
            for k in 0..1u64 << l {
                let node = iv(l, k);
                assert_eq!(
                    col.table_from(&tree, &node),
                    count_table(&col, &node).unwrap()
                );
            }
        }
    }

    #[test]
    fn mirror_reverses_order() {
        let s = IntervalSet::from_indices(3, [0, 1, 6]).unwrap();
        assert_eq!(s.mirror().indices(), &[1, 6, 7]);
        assert_eq!(s.mirror().mirror(), s);
    }

    #[test]
    fn extended_and_restricted_round_trip() {
        let base = IntervalSet::from_indices(3, [1, 4]).unwrap();
        let col = Colouring::from_vec(base.clone(), 2, vec![Some(2), Some(1)]).unwrap();
        let extra = IntervalSet::from_indices(3, [0, 7]).unwrap();
        let ext = col.extended(&extra).unwrap();
        assert_eq!(ext.colours(), &[None, Some(2), Some(1), None]);
        assert!(ext.preserves(&col));
        assert_eq!(ext.restricted(&base).unwrap(), col);
    }
}
