//! Distance-adaptive computation: a promise checker that only evaluates the
//! DP cells on a diagonal band, a driver doubling the promise until it is
//! verified, and the projection onto the effective alphabets for
//! Delete-Insert.
//!
//! An alignment of cost at most `D` never leaves the diagonals
//! `|i - j| <= D` (Delete-Insert, Levenshtein) or `0 <= i - j <= D`
//! (Delete-Replace), so treating out-of-band cells as unreachable preserves
//! every distance that is at most the promise.

use std::time::Instant;

use crate::distance::{Counters, Distance, DistanceResult, Metric};
use crate::error::{EditError, Result};
use crate::text::{Symbol, SymbolString};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandOutcome {
    /// The distance is at most the promise and equals the value.
    Verified(u64),
    /// The distance exceeds the promise.
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandCheck {
    pub outcome: BandOutcome,
    /// `cells_filled` holds the number of in-band cells evaluated.
    pub counters: Counters,
}

/// Normalizes `Ir` to `Dr` on the swapped pair and rejects `Swap`.
fn band_metric<'a>(
    metric: Metric,
    source: &'a [Symbol],
    target: &'a [Symbol],
    operation: &'static str,
) -> Result<(Metric, &'a [Symbol], &'a [Symbol])> {
    match metric {
        Metric::Di | Metric::Dir | Metric::Dr => Ok((metric, source, target)),
        Metric::Ir => Ok((Metric::Dr, target, source)),
        Metric::Swap => Err(EditError::UnsupportedMetric { operation, metric: metric.to_string() }),
    }
}

/// Diagonal range `lo..=hi` of `i - j` kept by a band of width `promise`.
fn diagonals(metric: Metric, promise: usize) -> (isize, isize) {
    match metric {
        Metric::Dr => (0, promise as isize),
        _ => (-(promise as isize), promise as isize),
    }
}

/// Banded DP value over the prefix matrix `(n+1) x (m+1)` using two rolling
/// rows. Returns the value of cell `(n, m)` (unreachable when outside the
/// band) and counts evaluated cells.
fn band_value(s: &[Symbol], t: &[Symbol], metric: Metric, promise: usize, counters: &mut Counters) -> Distance {
    let (n, m) = (s.len(), t.len());
    let (lo, hi) = diagonals(metric, promise);
    let diff = n as isize - m as isize;
    if diff < lo || diff > hi {
        return Distance::Unreachable;
    }
    // row i stores j in i-hi ..= i-lo, i.e. slot k = j - (i - hi)
    let width = (hi - lo + 1) as usize;
    let mut prev = vec![Distance::Unreachable; width];
    let mut cur = vec![Distance::Unreachable; width];
    for i in 0..=n as isize {
        cur.fill(Distance::Unreachable);
        let j_first = (i - hi).max(0);
        let j_last = (i - lo).min(m as isize);
        for j in j_first..=j_last {
            let k = (j - (i - hi)) as usize;
            // cell (i-1, j) sits at slot k+1 of the previous row, (i-1, j-1) at k,
            // (i, j-1) at k-1 of this row
            let up = if i > 0 && k + 1 < width { prev[k + 1] } else { Distance::Unreachable };
            let diag = if i > 0 && j > 0 { prev[k] } else { Distance::Unreachable };
            let left = if j > 0 && k > 0 { cur[k - 1] } else { Distance::Unreachable };
            let v = if i == 0 || j == 0 {
                match metric {
                    Metric::Dr if i < j => Distance::Unreachable,
                    _ => Distance::Finite((i + j) as u64),
                }
            } else if s[i as usize - 1] == t[j as usize - 1] {
                diag
            } else {
                match metric {
                    Metric::Di => (up + 1).min(left + 1),
                    Metric::Dir => (up + 1).min(left + 1).min(diag + 1),
                    Metric::Dr => (up + 1).min(diag + 1),
                    Metric::Ir | Metric::Swap => unreachable!(),
                }
            };
            cur[k] = v;
            counters.cells_filled += 1;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[(m as isize - (n as isize - hi)) as usize]
}

/// Checks whether the distance from `source` to `target` is at most
/// `promise`, touching at most `(2D+1) * (min(n, m) + 1)` cells.
pub fn banded_check(source: &SymbolString, target: &SymbolString, metric: Metric, promise: u64) -> Result<BandCheck> {
    let (metric, s, t) = band_metric(metric, source.ids(), target.ids(), "banded check")?;
    let started = Instant::now();
    let mut counters = Counters::default();
    // a band wider than n + m changes nothing
    let promise_cells = promise.min((s.len() + t.len()) as u64) as usize;
    let value = band_value(s, t, metric, promise_cells, &mut counters);
    counters.wall_time_ns = started.elapsed().as_nanos() as u64;
    let outcome = match value {
        Distance::Finite(d) if d <= promise => BandOutcome::Verified(d),
        _ => BandOutcome::Refuted,
    };
    Ok(BandCheck { outcome, counters })
}

/// Exact distance in time proportional to `(d + 1) * min(n, m)`, by
/// doubling the promise from 1 after an equality scan.
pub fn distance_by_doubling(source: &SymbolString, target: &SymbolString, metric: Metric) -> Result<DistanceResult> {
    let (metric, s, t) = band_metric(metric, source.ids(), target.ids(), "doubling")?;
    let started = Instant::now();
    let mut counters = Counters::default();
    let (n, m) = (s.len(), t.len());
    let finish = |distance, mut counters: Counters| {
        counters.wall_time_ns = started.elapsed().as_nanos() as u64;
        Ok(DistanceResult { distance, counters })
    };

    if metric == Metric::Dr && n < m {
        return finish(Distance::Unreachable, counters);
    }
    if n == m {
        let prefix = s.iter().zip(t).take_while(|(a, b)| a == b).count();
        counters.cells_filled += (prefix + 1).min(n + 1) as u64;
        if prefix == n {
            return finish(Distance::ZERO, counters);
        }
    }

    // With D >= max(n, m) the band covers every cell reachable under the metric.
    let covering = n.max(m);
    let mut promise = 1usize;
    loop {
        let width = promise.min(covering);
        let value = band_value(s, t, metric, width, &mut counters);
        if width == covering || matches!(value, Distance::Finite(d) if d as usize <= width) {
            return finish(value, counters);
        }
        promise *= 2;
    }
}

/// A Delete-Insert instance restricted to the symbols both strings share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub source: SymbolString,
    pub target: SymbolString,
    /// Deletions and insertions of the symbols that were removed.
    pub base_cost: u64,
}

/// Removes from each string the symbols absent from the other.
///
/// Only valid for Delete-Insert: a removed symbol can never be matched, so
/// it costs exactly one operation, while with Replace it might be cheaper
/// to substitute it.
pub fn project_effective(source: &SymbolString, target: &SymbolString, metric: Metric) -> Result<Projection> {
    if metric != Metric::Di {
        return Err(EditError::UnsupportedMetric { operation: "effective-alphabet projection", metric: metric.to_string() });
    }
    let sigma = source.sigma().max(target.sigma());
    let mut in_source = vec![false; sigma];
    let mut in_target = vec![false; sigma];
    source.ids().iter().for_each(|&a| in_source[a as usize] = true);
    target.ids().iter().for_each(|&a| in_target[a as usize] = true);
    let keep = |s: &SymbolString, other: &[bool]| -> Vec<Symbol> {
        s.ids().iter().copied().filter(|&a| other[a as usize]).collect()
    };
    let s = keep(source, &in_target);
    let t = keep(target, &in_source);
    let base_cost = (source.len() - s.len() + target.len() - t.len()) as u64;
    Ok(Projection {
        source: SymbolString::new(s, sigma)?,
        target: SymbolString::new(t, sigma)?,
        base_cost,
    })
}

/// Delete-Insert distance by projecting onto the effective alphabets and
/// running the doubling driver on what remains.
pub fn project_then_double(source: &SymbolString, target: &SymbolString) -> Result<DistanceResult> {
    let started = Instant::now();
    let projection = project_effective(source, target, Metric::Di)?;
    let mut result = distance_by_doubling(&projection.source, &projection.target, Metric::Di)?;
    result.distance = result.distance + projection.base_cost;
    result.counters.wall_time_ns = started.elapsed().as_nanos() as u64;
    Ok(result)
}
