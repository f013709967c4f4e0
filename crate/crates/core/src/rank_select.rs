//! Rank and select over symbol strings.
//!
//! [`PostingListIndex`] keeps, for every symbol, the sorted list of positions
//! where it occurs. `select` is an array access; `rank` is a sorted search in
//! one list. [`IndexCursor`] adds a per-symbol finger so that a run of
//! queries on the same symbol costs a doubling search from the previous
//! answer instead of a full binary search. [`ScanIndex`] answers the same
//! queries by scanning and serves as the test baseline.
//!
//! Positions are 0-indexed. `rank(a, i)` counts occurrences of `a` in
//! positions `0..=i`, with `rank(a, -1) == 0`. `select(a, k)` is 1-indexed in
//! `k` and returns the position of the `k`-th occurrence.

use crate::distance::Counters;
use crate::error::{EditError, Result};
use crate::text::{Symbol, SymbolString};

pub trait RankSelect {
    fn sigma(&self) -> usize;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn rank(&self, symbol: Symbol, i: isize) -> Result<usize>;

    fn select(&self, symbol: Symbol, k: usize) -> Result<Option<usize>>;
}

fn check_symbol(symbol: Symbol, sigma: usize) -> Result<()> {
    if symbol as usize >= sigma {
        return Err(EditError::SymbolOutOfRange { symbol: symbol as usize, sigma });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostingListIndex {
    lists: Vec<Vec<usize>>,
    len: usize,
}

impl PostingListIndex {
    pub fn build(s: &SymbolString) -> Self {
        let mut lists = vec![Vec::new(); s.sigma()];
        for (pos, &id) in s.ids().iter().enumerate() {
            lists[id as usize].push(pos);
        }
        PostingListIndex { lists, len: s.len() }
    }

    pub fn positions(&self, symbol: Symbol) -> &[usize] {
        &self.lists[symbol as usize]
    }

    pub fn cursor(&self) -> IndexCursor<'_> {
        IndexCursor { index: self, fingers: vec![COLD; self.lists.len()] }
    }
}

impl RankSelect for PostingListIndex {
    fn sigma(&self) -> usize {
        self.lists.len()
    }

    fn len(&self) -> usize {
        self.len
    }

    fn rank(&self, symbol: Symbol, i: isize) -> Result<usize> {
        check_symbol(symbol, self.sigma())?;
        if i < 0 {
            return Ok(0);
        }
        let i = i as usize;
        Ok(self.lists[symbol as usize].partition_point(|&p| p <= i))
    }

    fn select(&self, symbol: Symbol, k: usize) -> Result<Option<usize>> {
        check_symbol(symbol, self.sigma())?;
        if k == 0 {
            return Err(EditError::ZeroOccurrence);
        }
        Ok(self.lists[symbol as usize].get(k - 1).copied())
    }
}

const COLD: usize = usize::MAX;

/// Query state for one computation over a shared [`PostingListIndex`].
///
/// Every query bumps the caller's counters by exactly one.
#[derive(Clone, Debug)]
pub struct IndexCursor<'a> {
    index: &'a PostingListIndex,
    fingers: Vec<usize>,
}

impl<'a> IndexCursor<'a> {
    pub fn index(&self) -> &'a PostingListIndex {
        self.index
    }

    /// Occurrences of `symbol` in `0..=i`. The symbol must be in range.
    pub fn rank(&mut self, symbol: Symbol, i: isize, counters: &mut Counters) -> usize {
        counters.rank_ops += 1;
        if i < 0 {
            return 0;
        }
        let list = &self.index.lists[symbol as usize];
        let finger = &mut self.fingers[symbol as usize];
        let answer = if *finger == COLD {
            list.partition_point(|&p| p <= i as usize)
        } else {
            gallop_rank(list, *finger, i as usize)
        };
        *finger = answer;
        answer
    }

    /// Position of the `k`-th occurrence (`k >= 1`) of `symbol`.
    pub fn select(&self, symbol: Symbol, k: usize, counters: &mut Counters) -> Option<usize> {
        counters.select_ops += 1;
        debug_assert!(k >= 1);
        self.index.lists[symbol as usize].get(k.wrapping_sub(1)).copied()
    }
}

/// Number of entries `<= i` in the sorted `list`, searching outward from
/// the previous answer `start` with exponentially growing steps.
pub(crate) fn gallop_rank(list: &[usize], start: usize, i: usize) -> usize {
    let start = start.min(list.len());
    if start < list.len() && list[start] <= i {
        // answer > start; list[lo - 1] <= i
        let mut lo = start + 1;
        let mut step = 1;
        let hi = loop {
            let probe = lo - 1 + step;
            if probe >= list.len() {
                break list.len();
            }
            if list[probe] <= i {
                lo = probe + 1;
                step <<= 1;
            } else {
                break probe;
            }
        };
        lo + list[lo..hi].partition_point(|&p| p <= i)
    } else if start > 0 && list[start - 1] > i {
        // answer < start; list[hi] > i
        let mut hi = start - 1;
        let mut step = 1;
        let lo = loop {
            if hi < step {
                break 0;
            }
            let probe = hi - step;
            if list[probe] > i {
                hi = probe;
                step <<= 1;
            } else {
                break probe + 1;
            }
        };
        lo + list[lo..hi].partition_point(|&p| p <= i)
    } else {
        start
    }
}

/// Answers queries by scanning the string.
#[derive(Clone, Debug)]
pub struct ScanIndex {
    s: SymbolString,
}

impl ScanIndex {
    pub fn new(s: SymbolString) -> Self {
        ScanIndex { s }
    }
}

impl RankSelect for ScanIndex {
    fn sigma(&self) -> usize {
        self.s.sigma()
    }

    fn len(&self) -> usize {
        self.s.len()
    }

    fn rank(&self, symbol: Symbol, i: isize) -> Result<usize> {
        check_symbol(symbol, self.sigma())?;
        if i < 0 {
            return Ok(0);
        }
        let end = (i as usize + 1).min(self.s.len());
        Ok(self.s.ids()[..end].iter().filter(|&&c| c == symbol).count())
    }

    fn select(&self, symbol: Symbol, k: usize) -> Result<Option<usize>> {
        check_symbol(symbol, self.sigma())?;
        if k == 0 {
            return Err(EditError::ZeroOccurrence);
        }
        Ok(self
            .s
            .ids()
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == symbol)
            .nth(k - 1)
            .map(|(p, _)| p))
    }
}
