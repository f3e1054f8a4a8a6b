//! Plain-text tree rendering for `--pretty`.

use std::fmt::Write;

use dyad_core::{Colouring, DyadicInterval, IntervalSet};

/// Deepest level drawn; below it the leaves are listed instead.
const MAX_DRAWN_LEVEL: u32 = 5;
const CELL: usize = 3;

/// One row per level showing how many members each node holds, then a leaf
/// row with colours (`?` for an uncoloured member, `.` for a non-member).
/// `extra` members are drawn as uncoloured; `mark` gets a `*`.
pub fn tree(col: &Colouring, extra: Option<&IntervalSet>, mark: Option<DyadicInterval>) -> String {
    let j = col.level();
    let members = match extra {
        Some(u) => col.base().union(u).unwrap_or_else(|_| col.base().clone()),
        None => col.base().clone(),
    };
    let bottom = j.min(MAX_DRAWN_LEVEL);
    let mut out = String::new();
    for level in 0..=bottom {
        let width = CELL << (bottom - level);
        let _ = write!(out, "L{level:<2} ");
        for k in 0..1u64 << level {
            let node = DyadicInterval::new(level, k).expect("level in range");
            let count = members.count_in(&node);
            let mut cell = if count == 0 {
                ".".to_string()
            } else {
                count.to_string()
            };
            if mark == Some(node) {
                cell.push('*');
            }
            let _ = write!(out, "{cell:^width$}");
        }
        out.push('\n');
    }
    if j <= MAX_DRAWN_LEVEL {
        let _ = write!(out, "    ");
        for k in 0..1u64 << j {
            let leaf = DyadicInterval::new(j, k).expect("level in range");
            let cell = match col.colour_of(&leaf) {
                Some(c) => c.to_string(),
                None if members.contains(&leaf) => "?".to_string(),
                None => ".".to_string(),
            };
            let _ = write!(out, "{cell:^CELL$}");
        }
        out.push('\n');
    } else {
        let _ = writeln!(out, "leaves at level {j}:");
        for iv in members.iter() {
            match col.colour_of(&iv) {
                Some(c) => {
                    let _ = writeln!(out, "  {iv} -> {c}");
                }
                None => {
                    let _ = writeln!(out, "  {iv} -> ?");
                }
            }
        }
    }
    out
}
