//! Swap edit distance: the number of adjacent transpositions turning the
//! source into the target.
//!
//! Mapping the k-th occurrence of every symbol in the source to its k-th
//! occurrence in the target gives a permutation whose inversion count is
//! the distance. Inversions are counted by a local insertion sort that
//! enters a Fenwick-backed order-statistics set from the last insertion
//! point and gallops to the new element's rank.

use std::time::Instant;

use crate::distance::{Counters, Distance, DistanceResult};
use crate::error::{EditError, Result};
use crate::rank_select::PostingListIndex;
use crate::text::{parikh, SymbolString};

/// `pi[i]` is the target position matched to source position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrencePermutation(Vec<usize>);

impl OccurrencePermutation {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// Builds the occurrence mapping with one rank on the source and one select
/// on the target per position.
pub fn build_permutation(
    source: &SymbolString,
    target: &SymbolString,
    source_index: &PostingListIndex,
    target_index: &PostingListIndex,
    counters: &mut Counters,
) -> Result<OccurrencePermutation> {
    if source.len() != target.len() {
        return Err(EditError::Degenerate("lengths differ"));
    }
    if parikh(source) != parikh(target) {
        return Err(EditError::Degenerate("Parikh vectors differ"));
    }
    let mut src = source_index.cursor();
    let tgt = target_index.cursor();
    let pi = source
        .ids()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let k = src.rank(a, i as isize, counters);
            tgt.select(a, k, counters).expect("equal Parikh vectors")
        })
        .collect();
    Ok(OccurrencePermutation(pi))
}

/// Pairs `i < j` with `pi[i] > pi[j]`, by checking every pair.
pub fn count_inversions_oracle(pi: &[usize]) -> u64 {
    let mut count = 0;
    for i in 0..pi.len() {
        for j in i + 1..pi.len() {
            if pi[i] > pi[j] {
                count += 1;
            }
        }
    }
    count
}

/// Subset of `[0..n)` with rank and k-th-element queries.
struct OrderStatistics {
    tree: Vec<u32>,
    len: usize,
    top_bit: usize,
}

impl OrderStatistics {
    fn new(universe: usize) -> Self {
        let top_bit = if universe == 0 { 0 } else { 1 << (usize::BITS - 1 - universe.leading_zeros()) };
        OrderStatistics { tree: vec![0; universe + 1], len: 0, top_bit }
    }

    fn insert(&mut self, value: usize) {
        let mut i = value + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
        self.len += 1;
    }

    /// Element of rank `k` (0-indexed) among the inserted ones.
    fn kth(&self, k: usize) -> usize {
        debug_assert!(k < self.len);
        let mut pos = 0;
        let mut remaining = k as u32 + 1;
        let mut step = self.top_bit;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] < remaining {
                pos = next;
                remaining -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Local insertion sort over the permutation: each value is located by a
/// doubling search starting at the rank of the previously inserted value,
/// and contributes the number of already-inserted values greater than it.
/// Every probe of the set counts as one comparison.
pub fn count_inversions_adaptive(pi: &[usize], counters: &mut Counters) -> u64 {
    let mut set = OrderStatistics::new(pi.len());
    let mut inversions = 0u64;
    let mut finger = 0usize;
    for &v in pi {
        let inserted = set.len;
        // rank = number of inserted elements smaller than v
        let rank = if inserted == 0 {
            0
        } else {
            let less = |k: usize, c: &mut Counters| {
                c.comparisons += 1;
                set.kth(k) < v
            };
            if less(finger, counters) {
                // answer in finger+1 ..= inserted
                let mut lo = finger + 1;
                let mut step = 1;
                let mut hi = inserted;
                while lo < inserted {
                    let probe = (lo - 1 + step).min(inserted - 1);
                    if less(probe, counters) {
                        lo = probe + 1;
                        if probe == inserted - 1 {
                            break;
                        }
                        step <<= 1;
                    } else {
                        hi = probe;
                        break;
                    }
                }
                binary_rank(lo, hi, |k| less(k, counters))
            } else {
                // answer in 0 ..= finger; element at finger is greater
                let mut hi = finger;
                let mut step = 1;
                let mut lo = 0;
                while hi > 0 {
                    let probe = hi.saturating_sub(step);
                    if less(probe, counters) {
                        lo = probe + 1;
                        break;
                    }
                    hi = probe;
                    step <<= 1;
                }
                binary_rank(lo, hi, |k| less(k, counters))
            }
        };
        inversions += (inserted - rank) as u64;
        set.insert(v);
        finger = rank;
    }
    inversions
}

/// First `k` in `lo..hi` with `!less(k)`, given `less` is monotone.
fn binary_rank(mut lo: usize, mut hi: usize, mut less: impl FnMut(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if less(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionCounter {
    Quadratic,
    Adaptive,
}

/// Swap distance, or unreachable when the lengths or Parikh vectors differ.
pub fn swap_dist(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    swap_dist_with(source, target, InversionCounter::Adaptive)
}

pub fn swap_dist_with(source: &SymbolString, target: &SymbolString, counter: InversionCounter) -> DistanceResult {
    let started = Instant::now();
    let mut counters = Counters::default();
    let degenerate = source.len() != target.len() || parikh(source) != parikh(target);
    let distance = if degenerate {
        Distance::Unreachable
    } else {
        let (si, ti) = (PostingListIndex::build(source), PostingListIndex::build(target));
        let pi = build_permutation(source, target, &si, &ti, &mut counters).expect("screened");
        Distance::Finite(match counter {
            InversionCounter::Quadratic => {
                let n = pi.0.len() as u64;
                counters.comparisons += n * n.saturating_sub(1) / 2;
                count_inversions_oracle(&pi.0)
            }
            InversionCounter::Adaptive => count_inversions_adaptive(&pi.0, &mut counters),
        })
    };
    counters.wall_time_ns = started.elapsed().as_nanos() as u64;
    DistanceResult { distance, counters }
}
