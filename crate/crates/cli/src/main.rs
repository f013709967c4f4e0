//! `aedit`: edit distances between text files, one pair at a time or over a
//! manifest of pairs.
//!
//! Exit codes: 0 success, 1 usage or unsupported combination, 2 I/O or
//! decoding failure, 3 resource limit exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adaptive_edit::report::{read_manifest_file, write_csv, write_json};
use adaptive_edit::{
    run_experiment_results, run_pair, Algorithm, DpConfig, EditError, Metric, Report, RunConfig, TokenizeMode,
};
use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_CELL_LIMIT: u64 = 200_000_000;

#[derive(Parser, Debug)]
#[command(name = "aedit", version, about = "Edit distances with adaptive dynamic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between two files.
    Dist(DistArgs),
    /// Every metric and algorithm over a manifest of file pairs.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long, value_enum, default_value_t = Tokenize::Words)]
    tokenize: Tokenize,
    /// Keep only the first N bytes of each file.
    #[arg(long, value_name = "N", conflicts_with = "truncate_32k")]
    truncate_bytes: Option<usize>,
    /// Keep only the first 32 KiB of each file.
    #[arg(long)]
    truncate_32k: bool,
    /// Abort a computation after this many filled cells.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CELL_LIMIT)]
    cell_limit: u64,
}

impl InputArgs {
    fn config(&self) -> RunConfig {
        let truncate_bytes = if self.truncate_32k { Some(adaptive_edit::text::TRUNCATE_32K) } else { self.truncate_bytes };
        RunConfig {
            tokenize: match self.tokenize {
                Tokenize::Words => TokenizeMode::Words,
                Tokenize::Bytes => TokenizeMode::Bytes,
            },
            truncate_bytes,
            dp: DpConfig { cell_limit: Some(self.cell_limit), ..DpConfig::default() },
        }
    }
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long, value_enum)]
    metric: MetricArg,
    #[arg(long = "algo", value_enum, default_value_t = AlgoArg::Adaptive)]
    algorithm: AlgoArg,
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// CSV with header `source_path,target_path`.
    #[arg(long)]
    manifest: PathBuf,
    /// CSV report path; the JSON report goes next to it with a `.json` extension.
    #[arg(long)]
    out: PathBuf,
    /// Record failed rows and exit 0 instead of failing.
    #[arg(long)]
    keep_going: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MetricArg::Di, MetricArg::Dir, MetricArg::Dr, MetricArg::Ir, MetricArg::Swap])]
    metrics: Vec<MetricArg>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [AlgoArg::Classic, AlgoArg::Adaptive])]
    algos: Vec<AlgoArg>,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tokenize {
    Words,
    Bytes,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    Di,
    Dir,
    Dr,
    Ir,
    Swap,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Di => Metric::Di,
            MetricArg::Dir => Metric::Dir,
            MetricArg::Dr => Metric::Dr,
            MetricArg::Ir => Metric::Ir,
            MetricArg::Swap => Metric::Swap,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgoArg {
    Classic,
    Adaptive,
    Banded,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Classic => Algorithm::Classic,
            AlgoArg::Adaptive => Algorithm::Adaptive,
            AlgoArg::Banded => Algorithm::Banded,
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<EditError>() {
        Some(e) if e.is_resource() => 3,
        Some(e) if e.is_io() => 2,
        _ if err.downcast_ref::<io::Error>().is_some() => 2,
        _ => 1,
    }
}

fn dist(args: &DistArgs) -> anyhow::Result<()> {
    let report = run_pair(&args.source, &args.target, args.metric.into(), args.algorithm.into(), &args.input.config())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).context("writing report")?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&mut out, std::slice::from_ref(&report))?,
    }
    Ok(())
}

fn json_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

fn write_reports(out: &Path, reports: &[Report]) -> anyhow::Result<()> {
    let csv_file = fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
    write_csv(io::BufWriter::new(csv_file), reports)?;
    let json = json_path(out);
    let json_file = fs::File::create(&json).with_context(|| format!("creating {}", json.display()))?;
    let mut json_out = io::BufWriter::new(json_file);
    write_json(&mut json_out, reports)?;
    json_out.flush().with_context(|| format!("writing {}", json.display()))?;
    Ok(())
}

fn bench(args: &BenchArgs) -> anyhow::Result<()> {
    let manifest = read_manifest_file(&args.manifest)?;
    let metrics: Vec<Metric> = args.metrics.iter().map(|&m| m.into()).collect();
    let algorithms: Vec<Algorithm> = args.algos.iter().map(|&a| a.into()).collect();
    let mut first_error = None;
    let reports: Vec<Report> = run_experiment_results(&manifest, &metrics, &algorithms, &args.input.config())
        .into_iter()
        .map(|row| {
            row.unwrap_or_else(|failure| {
                eprintln!("aedit: {} vs {}: {}", failure.report.source, failure.report.target, failure.error);
                first_error.get_or_insert(failure.error);
                failure.report
            })
        })
        .collect();
    write_reports(&args.out, &reports)?;
    match first_error {
        Some(err) if !args.keep_going => Err(err.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Dist(args) => dist(args),
        Command::Bench(args) => bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match err.downcast_ref::<EditError>() {
                Some(e) => eprintln!("aedit: {e}"),
                None => eprintln!("aedit: {err:#}"),
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
