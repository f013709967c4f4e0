//! Seeded input families for the distance benchmarks.

use adaptive_edit::SymbolString;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub struct Workload {
    pub name: &'static str,
    pub source: SymbolString,
    pub target: SymbolString,
}

fn uniform(rng: &mut impl Rng, symbols: std::ops::Range<u32>, len: usize, sigma: usize) -> SymbolString {
    SymbolString::new((0..len).map(|_| rng.gen_range(symbols.clone())).collect(), sigma).unwrap()
}

/// Both strings uniform over the same `sigma` symbols.
pub fn random(len: usize, sigma: usize, seed: u64) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = uniform(&mut rng, 0..sigma as u32, len, sigma);
    let target = uniform(&mut rng, 0..sigma as u32, len, sigma);
    Workload { name: "random", source, target }
}

/// Source and target drawn from disjoint halves of the alphabet.
pub fn disjoint(len: usize, sigma: usize, seed: u64) -> Workload {
    assert!(sigma >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (sigma / 2) as u32;
    let source = uniform(&mut rng, 0..half, len, sigma);
    let target = uniform(&mut rng, half..sigma as u32, len, sigma);
    Workload { name: "disjoint", source, target }
}

/// Target is the source with `edits` random single-symbol replacements.
pub fn near_copy(len: usize, sigma: usize, edits: usize, seed: u64) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = uniform(&mut rng, 0..sigma as u32, len, sigma);
    let mut ids = source.ids().to_vec();
    for _ in 0..edits.min(len) {
        let at = rng.gen_range(0..len);
        ids[at] = rng.gen_range(0..sigma as u32);
    }
    let target = SymbolString::new(ids, sigma).unwrap();
    Workload { name: "near_copy", source, target }
}

/// Target is a shuffle of the source, so the swap distance is defined.
pub fn shuffled(len: usize, sigma: usize, seed: u64) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = uniform(&mut rng, 0..sigma as u32, len, sigma);
    let mut ids = source.ids().to_vec();
    ids.shuffle(&mut rng);
    let target = SymbolString::new(ids, sigma).unwrap();
    Workload { name: "shuffled", source, target }
}
