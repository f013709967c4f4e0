//! Classic memoized dynamic programs for the Delete-Insert, Levenshtein and
//! Delete-Replace distances, and a bottom-up dense oracle.

use std::time::Instant;

use crate::distance::{Counters, Distance, DistanceResult, Metric};
use crate::dp::{cand, evaluate, Candidates, Cell, DpConfig, Memo, Recurrence};
use crate::error::{EditError, Result};
use crate::text::SymbolString;

/// Border values shared by the Delete-Insert family of recurrences.
pub(crate) fn di_base((i, j): Cell) -> Option<Distance> {
    if j < 0 {
        Some(Distance::Finite((i + 1) as u64))
    } else if i < 0 {
        Some(Distance::Finite((j + 1) as u64))
    } else {
        None
    }
}

/// Border values for Delete-Replace: a target prefix longer than the source
/// prefix cannot be produced.
pub(crate) fn dr_base((i, j): Cell) -> Option<Distance> {
    if i < j {
        Some(Distance::Unreachable)
    } else if j < 0 {
        Some(Distance::Finite((i + 1) as u64))
    } else {
        None
    }
}

struct ClassicRule<'a> {
    source: &'a [u32],
    target: &'a [u32],
    metric: Metric,
}

impl Recurrence for ClassicRule<'_> {
    fn base(&self, cell: Cell) -> Option<Distance> {
        match self.metric {
            Metric::Dr => dr_base(cell),
            _ => di_base(cell),
        }
    }

    fn expand(&mut self, (i, j): Cell, _: &mut Counters) -> Candidates {
        if self.source[i as usize] == self.target[j as usize] {
            return [cand(0, i - 1, j - 1)].into_iter().collect();
        }
        match self.metric {
            Metric::Di => [cand(1, i - 1, j), cand(1, i, j - 1)].into_iter().collect(),
            Metric::Dir => [cand(1, i - 1, j), cand(1, i, j - 1), cand(1, i - 1, j - 1)]
                .into_iter()
                .collect(),
            Metric::Dr => [cand(1, i - 1, j), cand(1, i - 1, j - 1)].into_iter().collect(),
            Metric::Ir | Metric::Swap => unreachable!("normalized by caller"),
        }
    }
}

/// Classic memoized distance for `Di`, `Dir`, `Dr` or `Ir`.
pub fn classic_distance(
    metric: Metric,
    source: &SymbolString,
    target: &SymbolString,
    config: &DpConfig,
) -> Result<DistanceResult> {
    let (metric, source, target) = match metric {
        Metric::Di | Metric::Dir | Metric::Dr => (metric, source, target),
        Metric::Ir => (Metric::Dr, target, source),
        Metric::Swap => {
            return Err(EditError::UnsupportedMetric { operation: "classic DP", metric: metric.to_string() })
        }
    };
    let started = Instant::now();
    let mut counters = Counters::default();
    let (n, m) = (source.len(), target.len());
    let mut memo = if n == 0 || m == 0 {
        Memo::sparse()
    } else {
        Memo::for_shape(n, m, config.dense_budget)
    };
    let mut rule = ClassicRule { source: source.ids(), target: target.ids(), metric };
    let distance = evaluate(
        &mut rule,
        &mut memo,
        (n as isize - 1, m as isize - 1),
        &mut counters,
        config.cell_limit,
    )?;
    counters.wall_time_ns = started.elapsed().as_nanos() as u64;
    Ok(DistanceResult { distance, counters })
}

pub fn classic_di(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    classic_distance(Metric::Di, source, target, &DpConfig::default()).expect("no cell limit")
}

pub fn classic_dir(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    classic_distance(Metric::Dir, source, target, &DpConfig::default()).expect("no cell limit")
}

/// Delete-Replace distance from `source` to `target`; unreachable when the
/// source is shorter.
pub fn classic_dr(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    classic_distance(Metric::Dr, source, target, &DpConfig::default()).expect("no cell limit")
}

/// Insert-Replace distance from `source` to `target`.
pub fn classic_ir(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    classic_dr(target, source)
}

/// Bottom-up dense DP over the full `(n+1) x (m+1)` matrix. Never consults
/// an index; used as ground truth.
pub fn full_matrix_oracle(
    source: &[u32],
    target: &[u32],
    metric: Metric,
    dense_budget: u64,
) -> Result<Distance> {
    let (n, m) = (source.len(), target.len());
    let size = (n as u64 + 1).saturating_mul(m as u64 + 1);
    if size > dense_budget {
        return Err(EditError::ResourceExhausted { requested: size, limit: dense_budget });
    }
    let (source, target, metric) = match metric {
        Metric::Ir => (target, source, Metric::Dr),
        Metric::Swap => {
            return Err(EditError::UnsupportedMetric { operation: "full-matrix oracle", metric: metric.to_string() })
        }
        other => (source, target, other),
    };
    let (n, m) = (source.len(), target.len());
    let cols = m + 1;
    let mut d = vec![Distance::Unreachable; (n + 1) * cols];
    for i in 0..=n {
        for j in 0..=m {
            let v = if i == 0 || j == 0 {
                match metric {
                    Metric::Dr if i < j => Distance::Unreachable,
                    _ => Distance::Finite((i + j) as u64),
                }
            } else {
                let diag = d[(i - 1) * cols + j - 1];
                let up = d[(i - 1) * cols + j];
                let left = d[i * cols + j - 1];
                if source[i - 1] == target[j - 1] {
                    diag
                } else {
                    match metric {
                        Metric::Di => (up + 1).min(left + 1),
                        Metric::Dir => (up + 1).min(left + 1).min(diag + 1),
                        Metric::Dr => (up + 1).min(diag + 1),
                        Metric::Ir | Metric::Swap => unreachable!(),
                    }
                }
            };
            d[i * cols + j] = v;
        }
    }
    Ok(d[n * cols + m])
}

/// Length of a longest common subsequence from the Delete-Insert distance.
pub fn lcss_from_di(n: u64, m: u64, d_di: u64) -> Result<u64> {
    let total = n + m;
    if d_di > total || !(total - d_di).is_multiple_of(2) {
        return Err(EditError::Consistency(format!(
            "Delete-Insert distance {d_di} incompatible with lengths {n} and {m}"
        )));
    }
    let lcss = (total - d_di) / 2;
    if lcss > n.min(m) {
        return Err(EditError::Consistency(format!("common subsequence {lcss} longer than min({n}, {m})")));
    }
    Ok(lcss)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::text::encode_bytes;

    fn pair(a: &str, b: &str) -> (SymbolString, SymbolString) {
        encode_bytes(a.as_bytes(), b.as_bytes())
    }

    fn oracle(a: &str, b: &str, metric: Metric) -> Distance {
        let (s, t) = pair(a, b);
        full_matrix_oracle(s.ids(), t.ids(), metric, u64::MAX).unwrap()
    }

    /// Shortest edit script by breadth-first search over strings, for tiny
    /// inputs. Independent of any DP formulation.
    fn script_search(a: &str, b: &str, metric: Metric) -> Option<u64> {
        use std::collections::{HashSet, VecDeque};
        let alphabet: Vec<u8> = a.bytes().chain(b.bytes()).collect::<HashSet<_>>().into_iter().collect();
        let max_len = a.len().max(b.len());
        let mut seen = HashSet::from([a.as_bytes().to_vec()]);
        let mut queue = VecDeque::from([(a.as_bytes().to_vec(), 0u64)]);
        while let Some((cur, d)) = queue.pop_front() {
            if cur == b.as_bytes() {
                return Some(d);
            }
            let mut next = Vec::new();
            for p in 0..cur.len() {
                let mut del = cur.clone();
                del.remove(p);
                next.push(del);
                if metric != Metric::Di {
                    for &c in &alphabet {
                        let mut rep = cur.clone();
                        rep[p] = c;
                        next.push(rep);
                    }
                }
            }
            if metric != Metric::Dr && cur.len() < max_len {
                for p in 0..=cur.len() {
                    for &c in &alphabet {
                        let mut ins = cur.clone();
                        ins.insert(p, c);
                        next.push(ins);
                    }
                }
            }
            for s in next {
                if seen.insert(s.clone()) {
                    queue.push_back((s, d + 1));
                }
            }
        }
        None
    }

    #[test]
    fn script_search_fixes_oracle_examples() {
        assert_eq!(script_search("ab", "ba", Metric::Di), Some(2));
        assert_eq!(script_search("aa", "ab", Metric::Dr), Some(1));
        assert_eq!(script_search("ab", "b", Metric::Dr), Some(1));
        assert_eq!(script_search("ab", "cb", Metric::Dr), Some(1));
        assert_eq!(script_search("b", "ab", Metric::Dr), None);
        assert_eq!(script_search("ba", "ab", Metric::Dr), Some(2));
        assert_eq!(script_search("kitten", "sitting", Metric::Dir), Some(3));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle("ab", "ba", Metric::Di), Distance::Finite(2));
        assert_eq!(oracle("abc", "abc", Metric::Dir), Distance::ZERO);
        assert_eq!(oracle("aa", "ab", Metric::Dr), Distance::Finite(1));
        assert_eq!(oracle("b", "ab", Metric::Dr), Distance::Unreachable);
        assert_eq!(oracle("ab", "b", Metric::Ir), Distance::Unreachable);
    }

    #[test]
    fn oracle_budget() {
        let err = full_matrix_oracle(&[0; 10], &[0; 10], Metric::Di, 120).unwrap_err();
        assert!(matches!(err, EditError::ResourceExhausted { requested: 121, limit: 120 }));
    }

    #[test]
    fn classic_di_examples() {
        let d = |a, b| classic_di(&pair(a, b).0, &pair(a, b).1).distance;
        assert_eq!(d("", "abc"), Distance::Finite(3));
        assert_eq!(d("abc", "abc"), Distance::ZERO);
        assert_eq!(d("ab", "ba"), Distance::Finite(2));
    }

    #[test]
    fn classic_dir_examples() {
        let d = |a, b| classic_dir(&pair(a, b).0, &pair(a, b).1).distance;
        assert_eq!(d("a", "b"), Distance::Finite(1));
        assert_eq!(d("kitten", "sitting"), Distance::Finite(3));
        assert_eq!(d("", "ab"), Distance::Finite(2));
    }

    #[test]
    fn classic_dr_examples() {
        let d = |a, b| classic_dr(&pair(a, b).0, &pair(a, b).1).distance;
        assert_eq!(d("ab", "b"), Distance::Finite(1));
        assert_eq!(d("b", "ab"), Distance::Unreachable);
        assert_eq!(d("ab", "cb"), Distance::Finite(1));
        let (s, t) = pair("b", "ab");
        assert_eq!(classic_ir(&s, &t).distance, Distance::Finite(1));
    }

    #[test]
    fn classic_counts_calls_like_recursion() {
        // disjoint 2x2: 4 cells, two children each, plus the root call
        let (s, t) = pair("ab", "cd");
        let r = classic_di(&s, &t);
        assert_eq!(r.counters.cells_filled, 4);
        assert_eq!(r.counters.recursive_calls, 9);
        assert_eq!(r.counters.rank_ops, 0);
    }

    #[test]
    fn classic_sparse_memo_matches_dense() {
        let (s, t) = pair("abracadabra", "cadabrabra");
        let sparse = DpConfig { dense_budget: 0, cell_limit: None };
        for metric in [Metric::Di, Metric::Dir, Metric::Dr, Metric::Ir] {
            let a = classic_distance(metric, &s, &t, &DpConfig::default()).unwrap();
            let b = classic_distance(metric, &s, &t, &sparse).unwrap();
            assert_eq!(a.distance, b.distance);
            assert_eq!(a.counters.recursive_calls, b.counters.recursive_calls);
        }
    }

    #[test]
    fn classic_rejects_swap() {
        let (s, t) = pair("ab", "ba");
        assert!(classic_distance(Metric::Swap, &s, &t, &DpConfig::default()).is_err());
    }

    #[test]
    fn lcss_examples() {
        assert_eq!(lcss_from_di(2, 2, 2).unwrap(), 1);
        assert_eq!(lcss_from_di(3, 3, 0).unwrap(), 3);
        assert_eq!(lcss_from_di(2, 3, 5).unwrap(), 0);
        assert!(lcss_from_di(2, 2, 1).is_err());
        assert!(lcss_from_di(2, 2, 6).is_err());
        assert!(lcss_from_di(1, 5, 0).is_err());
    }

    fn small_pair(max_len: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>, usize)> {
        (1usize..=8).prop_flat_map(move |sigma| {
            (
                prop::collection::vec(0..sigma as u32, 0..=max_len),
                prop::collection::vec(0..sigma as u32, 0..=max_len),
                Just(sigma),
            )
        })
    }

    fn ss(ids: &[u32], sigma: usize) -> SymbolString {
        SymbolString::new(ids.to_vec(), sigma).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn memoized_equals_oracle((a, b, sigma) in small_pair(30)) {
            let (s, t) = (ss(&a, sigma), ss(&b, sigma));
            for metric in [Metric::Di, Metric::Dir, Metric::Dr, Metric::Ir] {
                let memo = classic_distance(metric, &s, &t, &DpConfig::default()).unwrap().distance;
                prop_assert_eq!(memo, full_matrix_oracle(&a, &b, metric, u64::MAX).unwrap());
            }
        }

        #[test]
        fn di_is_symmetric_and_bounded((a, b, sigma) in small_pair(30)) {
            let (s, t) = (ss(&a, sigma), ss(&b, sigma));
            let st = classic_di(&s, &t).distance;
            prop_assert_eq!(st, classic_di(&t, &s).distance);
            prop_assert!(st.finite().unwrap() <= (a.len() + b.len()) as u64);
            prop_assert!(classic_dir(&s, &t).distance.finite().unwrap() <= a.len().max(b.len()) as u64);
            match classic_dr(&s, &t).distance {
                Distance::Finite(d) => prop_assert!(d <= a.len() as u64),
                Distance::Unreachable => prop_assert!(a.len() < b.len()),
            }
        }

        #[test]
        fn dir_triangle(
            a in prop::collection::vec(0u32..4, 0..=12),
            b in prop::collection::vec(0u32..4, 0..=12),
            c in prop::collection::vec(0u32..4, 0..=12),
        ) {
            let d = |x: &[u32], y: &[u32]| classic_dir(&ss(x, 4), &ss(y, 4)).distance.finite().unwrap();
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        }
    }
}
