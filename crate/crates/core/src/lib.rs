//! Edit distances between token strings, computed by classic memoized
//! dynamic programs and by adaptive programs that use rank/select indices
//! to skip the parts of the DP matrix that symbol frequencies rule out.
//!
//! Supported operator sets are Delete-Insert (and through it the longest
//! common subsequence), Delete-Insert-Replace (Levenshtein), Delete-Replace
//! with its dual Insert-Replace, and adjacent Swap. Every computation
//! reports work counters so the savings can be measured.

pub mod adaptive;
pub mod banded;
pub mod classic;
pub mod distance;
pub mod dp;
pub mod error;
pub mod rank_select;
pub mod report;
pub mod swap;
pub mod text;

pub use adaptive::{adaptive_di, adaptive_dir, adaptive_distance, adaptive_dr, adaptive_ir, AdaptiveContext};
pub use banded::{
    banded_check, distance_by_doubling, project_effective, project_then_double, BandCheck, BandOutcome, Projection,
};
pub use classic::{
    classic_di, classic_dir, classic_distance, classic_dr, classic_ir, full_matrix_oracle, lcss_from_di,
};
pub use distance::{Algorithm, Counters, Distance, DistanceResult, Metric};
pub use dp::DpConfig;
pub use error::{EditError, Result};
pub use rank_select::{IndexCursor, PostingListIndex, RankSelect, ScanIndex};
pub use report::{run_experiment, run_experiment_results, run_pair, RowFailure, PairSpec, Report, RunConfig};
pub use swap::{
    build_permutation, count_inversions_adaptive, count_inversions_oracle, swap_dist, OccurrencePermutation,
};
pub use text::{
    build_alphabet, encode_bytes, pair_stats, parikh, tokenize, Alphabet, PairStats, ParikhVector, Symbol,
    SymbolString, TokenizeMode,
};
