//! Command-line front end: `measure`, `ingest`, `compose`, `rank`, `report`.
//!
//! Exit codes: 0 success, 1 usage, 2 measurement, 3 ingestion,
//! 4 composition, 5 output. Machine output goes to stdout, diagnostics to
//! stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{corpus_measure, Aggregation, TimingConfig};
use crate::cipher::CipherName;
use crate::fmt::two_decimals;
use crate::indicator::{
    build_ratio_table, compose_all, default_li_catalog, rank, Catalog, RankRow, SubjectRecord,
};
use crate::ingest::{
    emit_canonical, merge_records, parse_canonical, parse_profiler_csv, parse_synthesis_summary,
    profiler_records, synthesis_to_measurements, IngestOptions,
};
use crate::report::{
    emit_bar_chart_svg, emit_radar_chart_svg, emit_ranking_csv, emit_results_document,
    parse_results_document, ReportBundle, ResultsDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MEASURE: i32 = 2;
pub const EXIT_INGEST: i32 = 3;
pub const EXIT_COMPOSE: i32 = 4;
pub const EXIT_OUTPUT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "unibench",
    version,
    about = "Ratio-normalized geometric-mean performance indicators across hardware and software profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output directory. Without it, the command's document goes to stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Reference subject that all ratios are normalized against.
    #[arg(long, global = true, default_value = "aes128", value_name = "ID")]
    reference: String,

    /// Replace non-positive values with this floor (with a warning) instead of failing.
    #[arg(long, global = true, value_name = "X")]
    clamp_epsilon: Option<f64>,

    /// JSON catalog file replacing the built-in ten-indicator catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time the cipher corpus and emit a canonical measurement document (sw.et, sw.th).
    Measure(MeasureArgs),
    /// Parse profiler CSVs, synthesis summaries and canonical documents into one merged document.
    Ingest(IngestArgs),
    /// Normalize, compose and rank canonical documents; emits a results document.
    Compose(ComposeArgs),
    /// Print the ranking of a results document (or of explicit `--score` pairs) as CSV.
    Rank(RankArgs),
    /// Write ranking CSV, bar chart and radar chart for a results document.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Comma-separated cipher names.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "xtea,skipjack,threeway,katan32,katan64,hight,aes128"
    )]
    ciphers: Vec<String>,
    /// Bytes encrypted per timed pass; must be a multiple of every block size.
    #[arg(long, default_value_t = crate::bench::DEFAULT_WORKLOAD_BYTES)]
    workload_bytes: usize,
    /// Timed passes per cipher.
    #[arg(long, default_value_t = 30)]
    repetitions: u32,
    /// Discarded passes before timing.
    #[arg(long, default_value_t = 5)]
    warmup: u32,
    /// How timed passes are reduced to one execution time.
    #[arg(long, default_value = "median", value_parser = parse_agg)]
    agg: Aggregation,
    /// Workload seed (decimal or 0x-hex).
    #[arg(long, env = "UNIBENCH_SEED", default_value = "0x5eed", value_parser = parse_seed)]
    seed: u64,
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Profiler CSV export (repeatable).
    #[arg(long = "profiler-csv", value_name = "PATH")]
    profiler_csv: Vec<PathBuf>,
    /// Synthesis summary (repeatable).
    #[arg(long, value_name = "PATH")]
    synthesis: Vec<PathBuf>,
    /// Canonical measurement document (repeatable).
    #[arg(long, value_name = "PATH")]
    canonical: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct ComposeArgs {
    /// Canonical measurement documents; several are merged first.
    #[arg(required = true, value_name = "DOCUMENT")]
    documents: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Results document produced by `compose`.
    #[arg(
        value_name = "RESULTS",
        required_unless_present = "score",
        conflicts_with = "score"
    )]
    results: Option<PathBuf>,
    /// Explicit `subject=cmi` pair (repeatable).
    #[arg(long, value_name = "ID=CMI", value_parser = parse_score)]
    score: Vec<(String, f64)>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Results document produced by `compose`.
    #[arg(value_name = "RESULTS")]
    results: PathBuf,
    #[arg(long, default_value = "ranking.csv")]
    ranking_name: String,
    #[arg(long, default_value = "li_bar.svg")]
    bar_name: String,
    #[arg(long, default_value = "li_radar.svg")]
    radar_name: String,
}

fn parse_agg(s: &str) -> Result<Aggregation, String> {
    s.parse()
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn parse_score(s: &str) -> Result<(String, f64), String> {
    let (id, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ID=CMI, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|e| format!("bad cmi in `{s}`: {e}"))?;
    Ok((id.trim().to_string(), v))
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

type CmdResult = Result<(), Failure>;

fn fail(code: i32) -> impl Fn(String) -> Failure {
    move |msg| Failure(code, msg)
}

/// Runs the CLI with explicit argument list and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let mut warnings = Vec::new();
    let result = match &cli.command {
        Command::Measure(a) => cmd_measure(&cli.common, a, stdout),
        Command::Ingest(a) => cmd_ingest(&cli.common, a, stdout, &mut warnings),
        Command::Compose(a) => cmd_compose(&cli.common, a, stdout, stderr, &mut warnings),
        Command::Rank(a) => cmd_rank(a, stdout),
        Command::Report(a) => cmd_report(&cli.common, a, stdout),
    };
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn load_catalog(common: &Common, code: i32) -> Result<Catalog, Failure> {
    match &common.catalog {
        None => Ok(default_li_catalog()),
        Some(p) => {
            let text = read(p, code)?;
            Catalog::from_json(&text).map_err(|e| Failure(code, format!("{}: {e}", p.display())))
        }
    }
}

fn ingest_options(common: &Common, code: i32) -> Result<IngestOptions, Failure> {
    if let Some(eps) = common.clamp_epsilon {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Failure(
                code,
                format!("--clamp-epsilon must be positive, got {eps}"),
            ));
        }
    }
    Ok(IngestOptions {
        clamp_epsilon: common.clamp_epsilon,
    })
}

fn read(path: &Path, code: i32) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(code, format!("{}: {e}", path.display())))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CmdResult {
    let err =
        |e: std::io::Error| Failure(EXIT_OUTPUT, format!("{}: {e}", dir.join(name).display()));
    std::fs::create_dir_all(dir).map_err(err)?;
    std::fs::write(dir.join(name), contents).map_err(err)
}

/// Sends a document either to `<out>/<name>` or to stdout.
fn deliver(common: &Common, name: &str, doc: &str, stdout: &mut dyn Write) -> CmdResult {
    match &common.out {
        Some(dir) => write_file(dir, name, doc),
        None => stdout
            .write_all(doc.as_bytes())
            .map_err(|e| Failure(EXIT_OUTPUT, format!("stdout: {e}"))),
    }
}

fn cmd_measure(common: &Common, a: &MeasureArgs, stdout: &mut dyn Write) -> CmdResult {
    let err = fail(EXIT_MEASURE);
    for c in &a.ciphers {
        c.parse::<CipherName>().map_err(|e| err(e.to_string()))?;
    }
    let cfg = TimingConfig {
        warmup_iterations: a.warmup,
        repetitions: a.repetitions,
        workload_bytes: a.workload_bytes,
        aggregation: a.agg,
        seed: a.seed,
    };
    let records = corpus_measure(&a.ciphers, &cfg).map_err(|e| err(e.to_string()))?;
    let catalog = load_catalog(common, EXIT_MEASURE)?;
    let doc = emit_canonical(&records, &catalog).map_err(|e| err(e.to_string()))?;
    deliver(common, "measurements.json", &doc, stdout)
}

fn cmd_ingest(
    common: &Common,
    a: &IngestArgs,
    stdout: &mut dyn Write,
    warnings: &mut Vec<String>,
) -> CmdResult {
    let err = fail(EXIT_INGEST);
    if a.profiler_csv.is_empty() && a.synthesis.is_empty() && a.canonical.is_empty() {
        return Err(err(
            "no inputs: pass --profiler-csv, --synthesis or --canonical".into(),
        ));
    }
    let catalog = load_catalog(common, EXIT_INGEST)?;
    let opts = ingest_options(common, EXIT_INGEST)?;
    let mut merged: Vec<SubjectRecord> = Vec::new();
    let ctx = at;

    for p in &a.profiler_csv {
        let text = read(p, EXIT_INGEST)?;
        let exports = parse_profiler_csv(&text).map_err(ctx(p))?;
        let detail = format!("profiler csv {}", p.display());
        let recs = profiler_records(&exports, &opts, &detail, warnings).map_err(ctx(p))?;
        merged = merge_records(&merged, &recs).map_err(ctx(p))?;
    }
    for p in &a.synthesis {
        let text = read(p, EXIT_INGEST)?;
        let mut w = Vec::new();
        let summary = parse_synthesis_summary(&text, &mut w).map_err(ctx(p))?;
        warnings.extend(w.into_iter().map(|w| format!("{}: {w}", p.display())));
        let detail = format!("synthesis summary {}", p.display());
        let mut rec = SubjectRecord::new(&summary.subject_id);
        for m in synthesis_to_measurements(&summary, &detail).map_err(ctx(p))? {
            rec.insert(m)
                .map_err(|e| err(format!("{}: {e}", p.display())))?;
        }
        merged = merge_records(&merged, &[rec]).map_err(ctx(p))?;
    }
    for p in &a.canonical {
        let text = read(p, EXIT_INGEST)?;
        let recs = parse_canonical(&text, &catalog, &opts, warnings).map_err(ctx(p))?;
        merged = merge_records(&merged, &recs).map_err(ctx(p))?;
    }
    let doc = emit_canonical(&merged, &catalog).map_err(|e| err(e.to_string()))?;
    deliver(common, "measurements.json", &doc, stdout)
}

fn at(p: &Path) -> impl Fn(crate::ingest::IngestError) -> Failure + '_ {
    move |e| Failure(EXIT_INGEST, format!("{}: {e}", p.display()))
}

/// Runs normalization, composition and ranking over already-merged records.
pub fn compose_records(
    records: &[SubjectRecord],
    reference_id: &str,
    catalog: &Catalog,
) -> Result<ResultsDocument, String> {
    let table = build_ratio_table(records, reference_id, catalog.indicators())
        .map_err(|e| e.to_string())?;
    let results = compose_all(&table, catalog.profiles()).map_err(|e| e.to_string())?;
    let bundle = ReportBundle::new(results, table).map_err(|e| e.to_string())?;
    let order = catalog
        .ordered_ids()
        .into_iter()
        .map(String::from)
        .collect();
    Ok(ResultsDocument::new(&bundle, order))
}

fn ranking_table(rows: &[RankRow]) -> String {
    let mut s = String::from("rank,subject,cmi\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{}\n",
            r.rank,
            r.subject_id,
            two_decimals(r.cmi)
        ));
    }
    s
}

fn cmd_compose(
    common: &Common,
    a: &ComposeArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    warnings: &mut Vec<String>,
) -> CmdResult {
    let catalog = load_catalog(common, EXIT_INGEST)?;
    let opts = ingest_options(common, EXIT_INGEST)?;
    let mut merged = Vec::new();
    for p in &a.documents {
        let text = read(p, EXIT_INGEST)?;
        let recs = parse_canonical(&text, &catalog, &opts, warnings)
            .map_err(|e| Failure(EXIT_INGEST, format!("{}: {e}", p.display())))?;
        merged = merge_records(&merged, &recs)
            .map_err(|e| Failure(EXIT_INGEST, format!("{}: {e}", p.display())))?;
    }
    let doc = compose_records(&merged, &common.reference, &catalog).map_err(fail(EXIT_COMPOSE))?;
    for r in &doc.results {
        warnings.extend(r.warnings.iter().cloned());
    }
    let table = ranking_table(&doc.ranking);
    let json = emit_results_document(&doc);
    match &common.out {
        Some(dir) => {
            write_file(dir, "results.json", &json)?;
            stdout
                .write_all(table.as_bytes())
                .map_err(|e| Failure(EXIT_OUTPUT, e.to_string()))
        }
        None => {
            let _ = stderr.write_all(table.as_bytes());
            stdout
                .write_all(json.as_bytes())
                .map_err(|e| Failure(EXIT_OUTPUT, e.to_string()))
        }
    }
}

fn cmd_rank(a: &RankArgs, stdout: &mut dyn Write) -> CmdResult {
    let err = fail(EXIT_COMPOSE);
    let rows = match &a.results {
        Some(p) => {
            let doc = parse_results_document(&read(p, EXIT_COMPOSE)?)
                .map_err(|e| err(format!("{}: {e}", p.display())))?;
            rank(&doc.results).map_err(|e| err(e.to_string()))?
        }
        None => crate::indicator::rank_scores(a.score.iter().map(|(s, v)| (s.as_str(), *v)))
            .map_err(|e| err(e.to_string()))?,
    };
    stdout
        .write_all(ranking_table(&rows).as_bytes())
        .map_err(|e| Failure(EXIT_OUTPUT, e.to_string()))
}

/// The three report artifacts for a results document, as `(name, contents)`.
pub fn render_report(doc: &ResultsDocument) -> Result<[String; 3], String> {
    let bundle = doc.to_bundle().map_err(|e| e.to_string())?;
    let subjects: Vec<String> = bundle
        .ranking
        .iter()
        .map(|r| r.subject_id.clone())
        .collect();
    let axes: Vec<String> = doc
        .indicator_order
        .iter()
        .filter(|i| {
            subjects
                .iter()
                .all(|s| bundle.ratio_table.get(s, i).is_some())
        })
        .cloned()
        .collect();
    Ok([
        emit_ranking_csv(&bundle),
        emit_bar_chart_svg(&bundle.results).map_err(|e| e.to_string())?,
        emit_radar_chart_svg(&bundle.ratio_table, &subjects, &axes).map_err(|e| e.to_string())?,
    ])
}

fn cmd_report(common: &Common, a: &ReportArgs, stdout: &mut dyn Write) -> CmdResult {
    let err = fail(EXIT_COMPOSE);
    let Some(dir) = &common.out else {
        return Err(Failure(EXIT_USAGE, "report needs --out <dir>".into()));
    };
    let doc = parse_results_document(&read(&a.results, EXIT_COMPOSE)?)
        .map_err(|e| err(format!("{}: {e}", a.results.display())))?;
    let files = render_report(&doc).map_err(&err)?;
    for (name, contents) in [&a.ranking_name, &a.bar_name, &a.radar_name]
        .into_iter()
        .zip(&files)
    {
        write_file(dir, name, contents)?;
        let _ = writeln!(stdout, "{}", dir.join(name).display());
    }
    Ok(())
}
