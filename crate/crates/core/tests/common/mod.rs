#![allow(dead_code)]

use dyad_core::{
    check_homogeneous, check_previsible, colour_modulo_d, Colour, Colouring, HomogeneityParams,
    IntervalSet, Rational,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn params(num: u64, den: u64, d: u32) -> HomogeneityParams {
    HomogeneityParams::new(Rational::new(num, den).unwrap(), d).unwrap()
}

pub fn set(level: u32, idx: &[u64]) -> IntervalSet {
    IntervalSet::from_indices(level, idx.iter().copied()).unwrap()
}

/// Each leaf of `D_j` kept with probability `p`.
pub fn random_subset<R: Rng>(rng: &mut R, j: u32, p: f64) -> IntervalSet {
    let idx: Vec<u64> = (0..1u64 << j).filter(|_| rng.random_bool(p)).collect();
    IntervalSet::from_indices(j, idx).unwrap()
}

/// Grow `U` leaf by leaf in random order, keeping a leaf only when the pair
/// stays previsible, up to `target` leaves.
pub fn random_previsible_u<R: Rng>(
    rng: &mut R,
    c: &IntervalSet,
    d: u32,
    target: usize,
) -> IntervalSet {
    let j = c.level();
    let mut free: Vec<u64> = (0..1u64 << j)
        .filter(|k| !c.indices().contains(k))
        .collect();
    free.shuffle(rng);
    let mut kept = Vec::new();
    for leaf in free {
        if kept.len() == target {
            break;
        }
        kept.push(leaf);
        let u = IntervalSet::from_indices(j, kept.iter().copied()).unwrap();
        if !check_previsible(c, &u, d).unwrap().holds() {
            kept.pop();
        }
    }
    IntervalSet::from_indices(j, kept).unwrap()
}

/// Random `C`, coloured modulo `d`, and a previsible `U`.
pub fn random_instance<R: Rng>(rng: &mut R, j: u32, d: u32) -> (Colouring, IntervalSet) {
    let p = rng.random_range(0.1..0.6);
    let c = random_subset(rng, j, p);
    let col = colour_modulo_d(&c, d, None).unwrap();
    let free = (1usize << j) - c.len();
    let target = rng.random_range(0..=free.min(12));
    let u = random_previsible_u(rng, &c, d, target);
    (col, u)
}

/// Every total extension of `base`, tested with the full checker and no
/// pruning.
pub fn naive_extensions(base: &Colouring, params: &HomogeneityParams) -> Vec<Colouring> {
    let d = base.d();
    let free: Vec<usize> = (0..base.base().len())
        .filter(|&p| base.colour_at(p).is_none())
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![1 as Colour; free.len()];
    loop {
        let mut colours = base.colours().to_vec();
        for (&p, &c) in free.iter().zip(&digits) {
            colours[p] = Some(c);
        }
        let col = Colouring::from_vec(base.base().clone(), d, colours).unwrap();
        if check_homogeneous(&col, params).unwrap().holds() {
            out.push(col);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            if digits[i] < d {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}
