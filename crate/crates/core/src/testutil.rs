use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::opuc::VerblunskyWord;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the disk of radius `r`.
pub fn random_in_disk(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let m = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(m, rng.gen_range(0.0..TAU))
}

pub fn random_unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize, r: f64) -> VerblunskyWord {
    VerblunskyWord::interior_only((0..n).map(|_| random_in_disk(rng, r)).collect()).unwrap()
}

pub fn word_strategy(len: std::ops::Range<usize>, r: f64) -> impl Strategy<Value = VerblunskyWord> {
    prop::collection::vec((0.0..1.0f64, 0.0..TAU), len).prop_map(move |v| {
        VerblunskyWord::interior_only(
            v.into_iter()
                .map(|(m, t)| Complex64::from_polar(r * m.sqrt(), t))
                .collect(),
        )
        .unwrap()
    })
}

pub fn unimodular_strategy() -> impl Strategy<Value = Complex64> {
    (0.0..TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

pub fn sorted_args(points: &[Complex64]) -> Vec<f64> {
    let mut a: Vec<f64> = points.iter().map(|z| z.arg().rem_euclid(TAU)).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    a
}

/// Brute-force circular interlacing test on sorted argument lists.
pub fn arcs_interlace(a: &[f64], b: &[f64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut merged: Vec<(f64, bool)> = a.iter().map(|&x| (x, true)).chain(b.iter().map(|&x| (x, false))).collect();
    merged.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    (0..merged.len()).all(|i| merged[i].1 != merged[(i + 1) % merged.len()].1)
}
