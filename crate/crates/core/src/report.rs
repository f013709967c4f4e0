//! Experiment runner: file pairs in, one [`Report`] per (pair, metric,
//! algorithm) out, serialized as CSV or JSON.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adaptive::adaptive_distance;
use crate::banded::distance_by_doubling;
use crate::classic::classic_distance;
use crate::distance::{Algorithm, Counters, Distance, DistanceResult, Metric};
use crate::dp::DpConfig;
use crate::error::{EditError, Result};
use crate::swap::{swap_dist_with, InversionCounter};
use crate::text::{build_alphabet, pair_stats, parikh, tokenize, SymbolString, TokenizeMode};

/// Column order of the CSV report.
pub const CSV_COLUMNS: [&str; 17] = [
    "source",
    "target",
    "metric",
    "algorithm",
    "n",
    "m",
    "sigma",
    "cross_sum",
    "gamma",
    "distance",
    "recursive_calls",
    "rank_ops",
    "select_ops",
    "cells_filled",
    "comparisons",
    "wall_time_ns",
    "error",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub tokenize: TokenizeMode,
    pub truncate_bytes: Option<usize>,
    pub dp: DpConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { tokenize: TokenizeMode::Words, truncate_bytes: None, dp: DpConfig::default() }
    }
}

/// One computation. Rows that failed carry `error` and no distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub source: String,
    pub target: String,
    pub metric: Metric,
    pub algorithm: Algorithm,
    pub n: u64,
    pub m: u64,
    pub sigma: u64,
    pub cross_sum: u64,
    pub gamma: i64,
    pub distance: Option<Distance>,
    pub counters: Counters,
    pub error: Option<String>,
}

impl Report {
    fn failed(source: &Path, target: &Path, metric: Metric, algorithm: Algorithm, err: &EditError) -> Self {
        Report {
            source: source.display().to_string(),
            target: target.display().to_string(),
            metric,
            algorithm,
            n: 0,
            m: 0,
            sigma: 0,
            cross_sum: 0,
            gamma: 0,
            distance: None,
            counters: Counters::default(),
            error: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub source_path: PathBuf,
    pub target_path: PathBuf,
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| EditError::Io { path: path.to_path_buf(), source })
}

fn in_file(path: &Path) -> impl FnOnce(EditError) -> EditError + '_ {
    move |e| EditError::InFile { path: path.to_path_buf(), source: Box::new(e) }
}

/// Dispatches one metric/algorithm combination on already-encoded strings.
pub fn compute(
    source: &SymbolString,
    target: &SymbolString,
    metric: Metric,
    algorithm: Algorithm,
    dp: &DpConfig,
) -> Result<DistanceResult> {
    match (metric, algorithm) {
        (Metric::Swap, Algorithm::Classic) => Ok(swap_dist_with(source, target, InversionCounter::Quadratic)),
        (Metric::Swap, Algorithm::Adaptive) => Ok(swap_dist_with(source, target, InversionCounter::Adaptive)),
        (Metric::Swap, Algorithm::Banded) => {
            Err(EditError::UnsupportedMetric { operation: "banded algorithm", metric: metric.to_string() })
        }
        (_, Algorithm::Classic) => classic_distance(metric, source, target, dp),
        (_, Algorithm::Adaptive) => adaptive_distance(metric, source, target, dp),
        (_, Algorithm::Banded) => distance_by_doubling(source, target, metric),
    }
}

/// Reads, tokenizes and encodes both files, then computes the distance.
pub fn run_pair(
    source: &Path,
    target: &Path,
    metric: Metric,
    algorithm: Algorithm,
    config: &RunConfig,
) -> Result<Report> {
    let source_text = read_file(source)?;
    let target_text = read_file(target)?;
    let s_tokens = tokenize(&source_text, config.tokenize, config.truncate_bytes).map_err(in_file(source))?;
    let t_tokens = tokenize(&target_text, config.tokenize, config.truncate_bytes).map_err(in_file(target))?;
    let (alphabet, s, t) = build_alphabet(&s_tokens, &t_tokens);
    let stats = pair_stats(&parikh(&s), &parikh(&t))?;
    let started = Instant::now();
    let result = compute(&s, &t, metric, algorithm, &config.dp)?;
    let mut counters = result.counters;
    counters.wall_time_ns = started.elapsed().as_nanos() as u64;
    Ok(Report {
        source: source.display().to_string(),
        target: target.display().to_string(),
        metric,
        algorithm,
        n: s.len() as u64,
        m: t.len() as u64,
        sigma: alphabet.size() as u64,
        cross_sum: stats.cross_sum,
        gamma: stats.gamma,
        distance: Some(result.distance),
        counters,
        error: None,
    })
}

/// A row that could not be computed, with the error that stopped it.
#[derive(Debug)]
pub struct RowFailure {
    pub report: Report,
    pub error: EditError,
}

/// Like [`run_experiment`] but keeps the typed error of failed rows.
pub fn run_experiment_results(
    manifest: &[PairSpec],
    metrics: &[Metric],
    algorithms: &[Algorithm],
    config: &RunConfig,
) -> Vec<std::result::Result<Report, Box<RowFailure>>> {
    let jobs: Vec<(&PairSpec, Metric, Algorithm)> = manifest
        .iter()
        .flat_map(|p| metrics.iter().flat_map(move |&m| algorithms.iter().map(move |&a| (p, m, a))))
        .collect();
    jobs.into_par_iter()
        .map(|(pair, metric, algorithm)| {
            run_pair(&pair.source_path, &pair.target_path, metric, algorithm, config).map_err(|error| {
                Box::new(RowFailure {
                    report: Report::failed(&pair.source_path, &pair.target_path, metric, algorithm, &error),
                    error,
                })
            })
        })
        .collect()
}

/// Runs every (pair, metric, algorithm) combination. Rows come back in
/// manifest order, then metric order, then algorithm order; failures are
/// recorded in the row's `error` field.
pub fn run_experiment(
    manifest: &[PairSpec],
    metrics: &[Metric],
    algorithms: &[Algorithm],
    config: &RunConfig,
) -> Vec<Report> {
    run_experiment_results(manifest, metrics, algorithms, config)
        .into_iter()
        .map(|row| row.unwrap_or_else(|f| f.report))
        .collect()
}

/// Reads a manifest with header `source_path,target_path`.
pub fn read_manifest<R: Read>(reader: R) -> Result<Vec<PairSpec>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["source_path", "target_path"] {
        return Err(EditError::Parse(format!(
            "manifest header must be source_path,target_path, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    rdr.deserialize().map(|row| row.map_err(EditError::from)).collect()
}

pub fn read_manifest_file(path: &Path) -> Result<Vec<PairSpec>> {
    let file = fs::File::open(path).map_err(|source| EditError::Io { path: path.to_path_buf(), source })?;
    read_manifest(file).map_err(in_file(path))
}

fn csv_record(r: &Report) -> [String; 17] {
    let c = &r.counters;
    [
        r.source.clone(),
        r.target.clone(),
        r.metric.to_string(),
        r.algorithm.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.sigma.to_string(),
        r.cross_sum.to_string(),
        r.gamma.to_string(),
        r.distance.map(|d| d.to_string()).unwrap_or_default(),
        c.recursive_calls.to_string(),
        c.rank_ops.to_string(),
        c.select_ops.to_string(),
        c.cells_filled.to_string(),
        c.comparisons.to_string(),
        c.wall_time_ns.to_string(),
        r.error.clone().unwrap_or_default(),
    ]
}

pub fn write_csv<W: Write>(writer: W, reports: &[Report]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        w.write_record(csv_record(r))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<Report>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(EditError::Parse("unexpected report columns".into()));
    }
    let mut out = Vec::new();
    for record in rdr.records() {
        let rec = record?;
        let field = |k: usize| rec.get(k).unwrap_or("");
        let num = |k: usize| -> Result<u64> {
            field(k).parse().map_err(|_| EditError::Parse(format!("column {}: {:?}", CSV_COLUMNS[k], field(k))))
        };
        let optional = |s: &str| (!s.is_empty()).then(|| s.to_string());
        out.push(Report {
            source: field(0).to_string(),
            target: field(1).to_string(),
            metric: field(2).parse()?,
            algorithm: field(3).parse()?,
            n: num(4)?,
            m: num(5)?,
            sigma: num(6)?,
            cross_sum: num(7)?,
            gamma: field(8).parse().map_err(|_| EditError::Parse(format!("gamma: {:?}", field(8))))?,
            distance: optional(field(9)).map(|d| d.parse()).transpose()?,
            counters: Counters {
                recursive_calls: num(10)?,
                rank_ops: num(11)?,
                select_ops: num(12)?,
                cells_filled: num(13)?,
                comparisons: num(14)?,
                wall_time_ns: num(15)?,
            },
            error: optional(field(16)),
        });
    }
    Ok(out)
}

pub fn write_json<W: Write>(writer: W, reports: &[Report]) -> Result<()> {
    serde_json::to_writer_pretty(writer, reports)?;
    Ok(())
}
