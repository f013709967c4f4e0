//! Distance values, metric selectors and instrumentation counters shared by
//! every algorithm in the crate.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EditError;

/// An edit distance, or `Unreachable` when no sequence of the allowed
/// operations transforms the source into the target.
///
/// `Unreachable` compares greater than every finite value and absorbs
/// addition, so `min` over candidates behaves like a min over extended
/// naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Distance {
    Finite(u64),
    Unreachable,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl Add<u64> for Distance {
    type Output = Distance;

    fn add(self, rhs: u64) -> Distance {
        match self {
            Distance::Finite(d) => d.checked_add(rhs).map_or(Distance::Unreachable, Distance::Finite),
            Distance::Unreachable => Distance::Unreachable,
        }
    }
}

impl From<u64> for Distance {
    fn from(d: u64) -> Self {
        Distance::Finite(d)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

impl FromStr for Distance {
    type Err = EditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Distance::Unreachable);
        }
        s.parse::<u64>()
            .map(Distance::Finite)
            .map_err(|_| EditError::Parse(format!("invalid distance {s:?}")))
    }
}

/// Edit operator sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Delete, Insert (LCSS dual).
    Di,
    /// Delete, Insert, Replace (Levenshtein).
    Dir,
    /// Delete, Replace.
    Dr,
    /// Insert, Replace: Delete-Replace with the roles of the strings exchanged.
    Ir,
    /// Swap of adjacent symbols only.
    Swap,
}

impl Metric {
    pub const ALL: [Metric; 5] = [Metric::Di, Metric::Dir, Metric::Dr, Metric::Ir, Metric::Swap];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Di => "di",
            Metric::Dir => "dir",
            Metric::Dr => "dr",
            Metric::Ir => "ir",
            Metric::Swap => "swap",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = EditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| EditError::Parse(format!("unknown metric {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Classic,
    Adaptive,
    Banded,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Classic, Algorithm::Adaptive, Algorithm::Banded];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::Adaptive => "adaptive",
            Algorithm::Banded => "banded",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = EditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| EditError::Parse(format!("unknown algorithm {s:?}")))
    }
}

/// Work counters for one computation.
///
/// `recursive_calls` counts every cell-evaluation request, base cases and
/// memo hits included. `cells_filled` counts cells whose value was computed
/// (memo writes, or in-band cells for the banded checker).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub recursive_calls: u64,
    pub rank_ops: u64,
    pub select_ops: u64,
    pub cells_filled: u64,
    pub comparisons: u64,
    pub wall_time_ns: u64,
}

impl Counters {
    pub fn merge(&mut self, other: &Counters) {
        self.recursive_calls += other.recursive_calls;
        self.rank_ops += other.rank_ops;
        self.select_ops += other.select_ops;
        self.cells_filled += other.cells_filled;
        self.comparisons += other.comparisons;
        self.wall_time_ns += other.wall_time_ns;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub distance: Distance,
    pub counters: Counters,
}
