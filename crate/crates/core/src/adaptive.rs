//! Adaptive dynamic programs that consult rank/select indices on both
//! strings to skip regions of the DP matrix.
//!
//! For a mismatched cell `(i, j)` with `s = S[i]` and `t = T[j]`, the
//! recurrences ask whether `t` occurs in `S[0..=i]` and whether `s` occurs in
//! `T[0..=j]`. When a symbol cannot be matched the cell reduces to a single
//! step; otherwise its last usable occurrence, found with `select`, gives a
//! jump that deletes (or inserts) the whole gap at once.

use std::time::Instant;

use crate::classic::{di_base, dr_base};
use crate::distance::{Counters, Distance, DistanceResult, Metric};
use crate::dp::{cand, evaluate, Candidates, Cell, DpConfig, Memo, Recurrence};
use crate::error::{EditError, Result};
use crate::rank_select::{IndexCursor, PostingListIndex};
use crate::text::SymbolString;

/// Per-computation state: the two strings, cursors over their shared
/// indices and the counters of the last run. Each run starts from a fresh
/// sparse memo and cold fingers.
pub struct AdaptiveContext<'a> {
    source: &'a SymbolString,
    target: &'a SymbolString,
    source_index: IndexCursor<'a>,
    target_index: IndexCursor<'a>,
    counters: Counters,
}

impl<'a> AdaptiveContext<'a> {
    pub fn new(
        source: &'a SymbolString,
        target: &'a SymbolString,
        source_index: &'a PostingListIndex,
        target_index: &'a PostingListIndex,
    ) -> Self {
        AdaptiveContext {
            source,
            target,
            source_index: source_index.cursor(),
            target_index: target_index.cursor(),
            counters: Counters::default(),
        }
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    fn run(&mut self, metric: Metric, cell_limit: Option<u64>) -> Result<DistanceResult> {
        let started = Instant::now();
        let root = (self.source.len() as isize - 1, self.target.len() as isize - 1);
        self.source_index = self.source_index.index().cursor();
        self.target_index = self.target_index.index().cursor();
        let mut counters = Counters::default();
        let mut memo = Memo::sparse();
        let mut rule = AdaptiveRule { ctx: self, metric };
        let distance = evaluate(&mut rule, &mut memo, root, &mut counters, cell_limit);
        counters.wall_time_ns = started.elapsed().as_nanos() as u64;
        self.counters = counters;
        Ok(DistanceResult { distance: distance?, counters })
    }

    pub fn di(&mut self) -> DistanceResult {
        self.run(Metric::Di, None).expect("no cell limit")
    }

    pub fn dir(&mut self) -> DistanceResult {
        self.run(Metric::Dir, None).expect("no cell limit")
    }

    pub fn dr(&mut self) -> DistanceResult {
        self.run(Metric::Dr, None).expect("no cell limit")
    }
}

struct AdaptiveRule<'c, 'a> {
    ctx: &'c mut AdaptiveContext<'a>,
    metric: Metric,
}

impl AdaptiveRule<'_, '_> {
    fn di(&mut self, (i, j): Cell, c: &mut Counters, replace: bool) -> Candidates {
        let ctx = &mut *self.ctx;
        let s = ctx.source.get(i as usize);
        let t = ctx.target.get(j as usize);
        if s == t {
            return [cand(0, i - 1, j - 1)].into_iter().collect();
        }
        let rank_s = ctx.source_index.rank(t, i, c);
        let rank_t = ctx.target_index.rank(s, j, c);
        // Without Replace, dropping both symbols costs 2.
        let skip_both = if replace { cand(1, i - 1, j - 1) } else { cand(2, i - 1, j - 1) };
        let delete_jump = |ctx: &AdaptiveContext, c: &mut Counters| {
            let p = ctx.source_index.select(t, rank_s, c).expect("rank_s > 0") as isize;
            cand((i - p) as u64, p - 1, j - 1)
        };
        let insert_jump = |ctx: &AdaptiveContext, c: &mut Counters| {
            let p = ctx.target_index.select(s, rank_t, c).expect("rank_t > 0") as isize;
            cand((j - p) as u64, i - 1, p - 1)
        };
        let mut out = Candidates::new();
        match (rank_s, rank_t, replace) {
            (0, 0, _) => out.push(skip_both),
            // t cannot be matched: insert it
            (0, _, false) => out.push(cand(1, i, j - 1)),
            // s cannot be matched: delete it
            (_, 0, false) => out.push(cand(1, i - 1, j)),
            (0, _, true) => {
                out.push(skip_both);
                out.push(insert_jump(ctx, c));
            }
            (_, 0, true) => {
                out.push(skip_both);
                out.push(delete_jump(ctx, c));
            }
            _ => {
                out.push(skip_both);
                out.push(delete_jump(ctx, c));
                out.push(insert_jump(ctx, c));
            }
        }
        out
    }

    fn dr(&mut self, (i, j): Cell, c: &mut Counters) -> Candidates {
        let ctx = &mut *self.ctx;
        let s = ctx.source.get(i as usize);
        let t = ctx.target.get(j as usize);
        if s == t {
            return [cand(0, i - 1, j - 1)].into_iter().collect();
        }
        let rank_s = ctx.source_index.rank(t, i, c);
        let replace = cand(1, i - 1, j - 1);
        if rank_s == 0 {
            return [replace].into_iter().collect();
        }
        let p = ctx.source_index.select(t, rank_s, c).expect("rank_s > 0") as isize;
        [replace, cand((i - p) as u64, p - 1, j - 1)].into_iter().collect()
    }
}

impl Recurrence for AdaptiveRule<'_, '_> {
    fn base(&self, cell: Cell) -> Option<Distance> {
        match self.metric {
            Metric::Dr => dr_base(cell),
            _ => di_base(cell),
        }
    }

    fn expand(&mut self, cell: Cell, counters: &mut Counters) -> Candidates {
        match self.metric {
            Metric::Di => self.di(cell, counters, false),
            Metric::Dir => self.di(cell, counters, true),
            Metric::Dr => self.dr(cell, counters),
            Metric::Ir | Metric::Swap => unreachable!("normalized by caller"),
        }
    }
}

/// Adaptive distance for `Di`, `Dir`, `Dr` or `Ir`, building the posting
/// list indices it needs.
pub fn adaptive_distance(
    metric: Metric,
    source: &SymbolString,
    target: &SymbolString,
    config: &DpConfig,
) -> Result<DistanceResult> {
    let (metric, source, target) = match metric {
        Metric::Di | Metric::Dir | Metric::Dr => (metric, source, target),
        Metric::Ir => (Metric::Dr, target, source),
        Metric::Swap => {
            return Err(EditError::UnsupportedMetric { operation: "adaptive DP", metric: metric.to_string() })
        }
    };
    let source_index = PostingListIndex::build(source);
    // Delete-Replace never queries the target.
    let target_index = if metric == Metric::Dr {
        PostingListIndex::build(&SymbolString::new(Vec::new(), target.sigma())?)
    } else {
        PostingListIndex::build(target)
    };
    let mut ctx = AdaptiveContext::new(source, target, &source_index, &target_index);
    ctx.run(metric, config.cell_limit)
}

pub fn adaptive_di(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    adaptive_distance(Metric::Di, source, target, &DpConfig::default()).expect("no cell limit")
}

pub fn adaptive_dir(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    adaptive_distance(Metric::Dir, source, target, &DpConfig::default()).expect("no cell limit")
}

pub fn adaptive_dr(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    adaptive_distance(Metric::Dr, source, target, &DpConfig::default()).expect("no cell limit")
}

pub fn adaptive_ir(source: &SymbolString, target: &SymbolString) -> DistanceResult {
    adaptive_dr(target, source)
}
