//! Instances for the benchmarks in `benches/`.

use dyad_core::{colour_modulo_d, Colouring, IntervalSet};

/// `C` = leaves `≡ 0 (mod 4)` coloured modulo `d`, `U` = leaves `≡ 2 (mod 4)`.
///
/// Sibling subtrees above level `j - 2` hold equal counts and each child
/// below holds at most one member, so the pair is previsible for every `d`.
pub fn striped(j: u32, d: u32) -> (Colouring, IntervalSet) {
    let leaves = 1u64 << j;
    let c = IntervalSet::from_indices(j, (0..leaves).step_by(4)).expect("valid level");
    let u = IntervalSet::from_indices(j, (2..leaves).step_by(4)).expect("valid level");
    (colour_modulo_d(&c, d, None).expect("valid d"), u)
}

/// Every leaf of `D_j`, coloured modulo `d`.
pub fn full_mod_d(j: u32, d: u32) -> Colouring {
    colour_modulo_d(&IntervalSet::full(j).expect("valid level"), d, None).expect("valid d")
}
