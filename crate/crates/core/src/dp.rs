//! Memoized top-down evaluation of an edit-distance recurrence, driven by an
//! explicit work stack.
//!
//! A recurrence is described cell by cell: [`Recurrence::base`] answers the
//! border cells and [`Recurrence::expand`] lists, for an inner cell, the
//! candidates `cost + d(child)` whose minimum is the cell value. The engine
//! counts one recursive call per cell-evaluation request, exactly as a
//! recursive memoized implementation would count function entries: one for
//! the root, plus one per candidate of every filled cell.

use arrayvec::ArrayVec;
use rustc_hash::FxHashMap;

use crate::distance::{Counters, Distance};
use crate::error::{EditError, Result};

/// Cell coordinates, 0-indexed; `-1` denotes the empty prefix.
pub type Cell = (isize, isize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub cost: u64,
    pub child: Cell,
}

pub type Candidates = ArrayVec<Candidate, 3>;

pub(crate) fn cand(cost: u64, i: isize, j: isize) -> Candidate {
    Candidate { cost, child: (i, j) }
}

pub trait Recurrence {
    /// Value of a border cell, or `None` for an inner cell.
    fn base(&self, cell: Cell) -> Option<Distance>;

    /// Candidates for an inner cell. Called once per filled cell.
    fn expand(&mut self, cell: Cell, counters: &mut Counters) -> Candidates;
}

/// Dense-versus-sparse memo selection and work limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpConfig {
    /// Classic programs use a dense matrix when `n * m` is at most this;
    /// the bottom-up oracle refuses larger instances.
    pub dense_budget: u64,
    /// Abort once this many cells have been filled.
    pub cell_limit: Option<u64>,
}

pub const DEFAULT_DENSE_BUDGET: u64 = 100_000_000;

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { dense_budget: DEFAULT_DENSE_BUDGET, cell_limit: None }
    }
}

pub enum Memo {
    Dense { cols: usize, cells: Vec<Option<Distance>> },
    Sparse(FxHashMap<(u32, u32), Distance>),
}

impl Memo {
    pub fn dense(rows: usize, cols: usize) -> Self {
        Memo::Dense { cols, cells: vec![None; rows * cols] }
    }

    pub fn sparse() -> Self {
        Memo::Sparse(FxHashMap::default())
    }

    /// Dense when `rows * cols` fits in `budget`, sparse otherwise.
    pub fn for_shape(rows: usize, cols: usize, budget: u64) -> Self {
        match (rows as u64).checked_mul(cols as u64) {
            Some(size) if size <= budget => Memo::dense(rows, cols),
            _ => Memo::sparse(),
        }
    }

    fn get(&self, (i, j): Cell) -> Option<Distance> {
        match self {
            Memo::Dense { cols, cells } => cells[i as usize * cols + j as usize],
            Memo::Sparse(map) => map.get(&(i as u32, j as u32)).copied(),
        }
    }

    fn put(&mut self, (i, j): Cell, value: Distance) {
        match self {
            Memo::Dense { cols, cells } => {
                let slot = &mut cells[i as usize * *cols + j as usize];
                debug_assert!(slot.is_none_or(|v| v == value));
                *slot = Some(value);
            }
            Memo::Sparse(map) => {
                let prev = map.insert((i as u32, j as u32), value);
                debug_assert!(prev.is_none_or(|v| v == value));
            }
        }
    }
}

struct Frame {
    cell: Cell,
    cands: Candidates,
    next: usize,
}

fn known<R: Recurrence>(rule: &R, memo: &Memo, cell: Cell) -> Option<Distance> {
    rule.base(cell).or_else(|| memo.get(cell))
}

/// Value of `root` under `rule`.
pub fn evaluate<R: Recurrence>(
    rule: &mut R,
    memo: &mut Memo,
    root: Cell,
    counters: &mut Counters,
    cell_limit: Option<u64>,
) -> Result<Distance> {
    counters.recursive_calls += 1;
    if let Some(v) = known(rule, memo, root) {
        return Ok(v);
    }
    let mut stack: Vec<Frame> = Vec::new();
    let push = |stack: &mut Vec<Frame>, rule: &mut R, cell: Cell, counters: &mut Counters| {
        let cands = rule.expand(cell, counters);
        counters.recursive_calls += cands.len() as u64;
        stack.push(Frame { cell, cands, next: 0 });
    };
    push(&mut stack, rule, root, counters);

    while let Some(top) = stack.last_mut() {
        let mut pending = None;
        while top.next < top.cands.len() {
            let child = top.cands[top.next].child;
            if known(rule, memo, child).is_some() {
                top.next += 1;
            } else {
                pending = Some(child);
                break;
            }
        }
        if let Some(child) = pending {
            push(&mut stack, rule, child, counters);
            continue;
        }

        let top = stack.pop().expect("non-empty");
        let value = top
            .cands
            .iter()
            .map(|c| known(rule, memo, c.child).expect("child resolved") + c.cost)
            .min()
            .expect("inner cells have at least one candidate");
        memo.put(top.cell, value);
        counters.cells_filled += 1;
        if let Some(limit) = cell_limit {
            if counters.cells_filled > limit {
                return Err(EditError::ResourceExhausted { requested: counters.cells_filled, limit });
            }
        }
        if stack.is_empty() {
            return Ok(value);
        }
    }
    unreachable!("loop returns when the root is filled")
}
