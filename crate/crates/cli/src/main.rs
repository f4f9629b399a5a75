//! Benchmark harness: load or generate a graph, run the requested matching
//! algorithms, verify every output, and emit one JSON record per run.
//!
//! Exit codes: 0 all runs verified, 1 verification failure, 2 usage or
//! input error.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skipper_core::report::{ALGORITHM_GREEDY, ALGORITHM_LIMCHUNG, ALGORITHM_SKIPPER};
use skipper_core::{
    check_matching, check_state_consistency, compare_report, generate, run_greedy, run_limchung,
    run_skipper, EdgeOrder, GeneratorSpec, Graph, GraphFamily, Matching, RunMetrics,
    DEFAULT_RMAT_PROBS,
};

#[derive(Parser)]
#[command(name = "skipper", version, about = "Parallel maximal matching benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run matching algorithms on a loaded or generated graph
    Run(RunArgs),
    /// Aggregate JSON-lines records from `run` into a comparison summary
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Edge-list file to load
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Synthetic family to generate instead of loading a file
    #[arg(long = "gen", value_enum, value_name = "FAMILY")]
    family: Option<FamilyArg>,

    /// Vertex count for --gen
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// Edge count for --gen gnm_random and rmat
    #[arg(long, value_name = "M")]
    m: Option<usize>,

    /// Quadrant probabilities for --gen rmat (default 0.57,0.19,0.19,0.05)
    #[arg(long = "rmat-probs", value_name = "A,B,C,D", value_parser = parse_rmat_probs)]
    rmat_probs: Option<RmatProbs>,

    /// Input file format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Algorithms to run, comma separated
    #[arg(long, value_enum, value_delimiter = ',', required = true, value_name = "LIST")]
    algo: Vec<AlgoArg>,

    /// Worker threads (default: available hardware parallelism)
    #[arg(long, env = "SKIPPER_WORKERS", value_name = "K")]
    workers: Option<usize>,

    /// Seed for generation and shuffling
    #[arg(long, default_value_t = 0, value_name = "S")]
    seed: u64,

    /// Traverse edges in a seeded random order instead of input order
    #[arg(long)]
    shuffle: bool,

    /// Runs per algorithm
    #[arg(long, default_value_t = 3, value_name = "R")]
    repeats: usize,

    /// Write JSON records to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write the records as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON-lines file produced by `run`
    #[arg(value_name = "RECORDS")]
    records: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Path,
    Cycle,
    Star,
    Complete,
    #[value(name = "gnm_random", alias = "gnm-random")]
    GnmRandom,
    Rmat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Skipper,
    Limchung,
    Greedy,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Skipper => ALGORITHM_SKIPPER,
            AlgoArg::Limchung => ALGORITHM_LIMCHUNG,
            AlgoArg::Greedy => ALGORITHM_GREEDY,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Binary,
}

#[derive(Clone, Copy)]
struct RmatProbs([f64; 4]);

fn parse_rmat_probs(raw: &str) -> Result<RmatProbs, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated values, got {}", parts.len()));
    }
    let mut probs = [0.0; 4];
    for (slot, part) in probs.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid probability {part:?}"))?;
    }
    Ok(RmatProbs(probs))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Report(args) => cmd_report(&args).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<bool> {
    let workers = match args.workers {
        Some(0) => bail!("--workers must be at least 1"),
        Some(k) => k,
        None => std::thread::available_parallelism().map_or(1, |k| k.get()),
    };
    if args.repeats == 0 {
        bail!("--repeats must be at least 1");
    }
    let (graph, label) = build_graph(args)?;
    let order = if args.shuffle {
        EdgeOrder::Shuffled(args.seed)
    } else {
        EdgeOrder::Input
    };

    let mut sink = RecordSink::open(args)?;
    let mut all_verified = true;
    for &algo in &args.algo {
        for repeat in 0..args.repeats {
            let record = run_once(&graph, &label, algo, workers, order, args.seed, repeat);
            all_verified &= record.verified;
            sink.write(&record)?;
        }
    }
    sink.finish()?;
    Ok(all_verified)
}

fn build_graph(args: &RunArgs) -> anyhow::Result<(Graph, String)> {
    match (&args.input, args.family) {
        (Some(_), Some(_)) => bail!("--input and --gen are mutually exclusive"),
        (None, None) => bail!("one of --input or --gen is required"),
        (Some(path), None) => {
            if args.n.is_some() || args.m.is_some() || args.rmat_probs.is_some() {
                bail!("--n, --m, and --rmat-probs apply only to --gen");
            }
            let graph = match args.format {
                FormatArg::Text => Graph::load_edge_list_text(path),
                FormatArg::Binary => Graph::load_edge_list_binary(path),
            }
            .with_context(|| format!("loading {}", path.display()))?;
            Ok((graph, path.display().to_string()))
        }
        (None, Some(family)) => {
            let n = args.n.context("--gen requires --n")?;
            let need_m = || args.m.context("this family requires --m");
            let spec = match family {
                FamilyArg::Path => GeneratorSpec::path(n),
                FamilyArg::Cycle => GeneratorSpec::cycle(n),
                FamilyArg::Star => GeneratorSpec::star(n),
                FamilyArg::Complete => GeneratorSpec::complete(n),
                FamilyArg::GnmRandom => GeneratorSpec::gnm_random(n, need_m()?, args.seed),
                FamilyArg::Rmat => GeneratorSpec::rmat(
                    n,
                    need_m()?,
                    args.rmat_probs.map_or(DEFAULT_RMAT_PROBS, |p| p.0),
                    args.seed,
                ),
            };
            let graph = generate(&spec).context("generating graph")?;
            Ok((graph, generated_label(&spec)))
        }
    }
}

fn generated_label(spec: &GeneratorSpec) -> String {
    let family = match spec.family {
        GraphFamily::Path => "path",
        GraphFamily::Cycle => "cycle",
        GraphFamily::Star => "star",
        GraphFamily::Complete => "complete",
        GraphFamily::GnmRandom => "gnm_random",
        GraphFamily::Rmat => "rmat",
    };
    let mut label = format!("{family}-n{}", spec.n);
    if let Some(m) = spec.m {
        label.push_str(&format!("-m{m}-s{}", spec.seed));
    }
    label
}

fn run_once(
    graph: &Graph,
    label: &str,
    algo: AlgoArg,
    workers: usize,
    order: EdgeOrder,
    seed: u64,
    repeat: usize,
) -> RunMetrics {
    struct Outcome {
        wall_time_s: f64,
        matching: Matching,
        workers: usize,
        cas_executions: Option<u64>,
        iterations: Option<usize>,
        states: Option<Vec<u8>>,
    }

    let outcome = match algo {
        AlgoArg::Skipper => {
            let run = run_skipper(graph, workers, order);
            Outcome {
                wall_time_s: run.metrics.wall_time.as_secs_f64(),
                matching: run.matching,
                workers,
                cas_executions: Some(run.metrics.cas_executions),
                iterations: None,
                states: Some(run.states.snapshot()),
            }
        }
        AlgoArg::Limchung => {
            let (matching, metrics) = run_limchung(graph, workers);
            Outcome {
                wall_time_s: metrics.wall_time.as_secs_f64(),
                matching,
                workers,
                cas_executions: None,
                iterations: Some(metrics.iterations),
                states: None,
            }
        }
        AlgoArg::Greedy => {
            let started = Instant::now();
            let matching = run_greedy(graph, order);
            Outcome {
                wall_time_s: started.elapsed().as_secs_f64(),
                matching,
                workers: 1,
                cas_executions: None,
                iterations: None,
                states: None,
            }
        }
    };

    let report = check_matching(graph, &outcome.matching);
    let states_ok = outcome
        .states
        .as_ref()
        .is_none_or(|snapshot| check_state_consistency(snapshot, &outcome.matching));
    let verified = report.ok() && states_ok;
    if !verified {
        eprintln!(
            "verification FAILED: {} on {label} (repeat {repeat})",
            algo.name()
        );
        for violation in &report.violations {
            eprintln!("  {violation}");
        }
        if !states_ok {
            eprintln!("  vertex states inconsistent with the matching");
        }
    }

    let num_edges = graph.num_edges();
    let cas_pct = outcome.cas_executions.map(|cas| {
        if num_edges == 0 {
            0.0
        } else {
            100.0 * cas as f64 / num_edges as f64
        }
    });
    RunMetrics {
        algorithm: algo.name().into(),
        graph: label.into(),
        num_vertices: graph.num_vertices(),
        num_edges,
        workers: outcome.workers,
        seed,
        repeat,
        wall_time_s: outcome.wall_time_s,
        matched_pairs: outcome.matching.len(),
        matched_endpoint_pct: outcome.matching.endpoint_percentage(graph.num_vertices()),
        cas_executions: outcome.cas_executions,
        cas_pct,
        iterations: outcome.iterations,
        verified,
    }
}

/// Flat row for CSV output; optional cells stay present but may be empty.
#[derive(Serialize)]
struct CsvRow<'a> {
    algorithm: &'a str,
    graph: &'a str,
    num_vertices: usize,
    num_edges: usize,
    workers: usize,
    seed: u64,
    repeat: usize,
    wall_time_s: f64,
    matched_pairs: usize,
    matched_endpoint_pct: f64,
    cas_executions: Option<u64>,
    cas_pct: Option<f64>,
    iterations: Option<usize>,
    verified: bool,
}

impl<'a> From<&'a RunMetrics> for CsvRow<'a> {
    fn from(r: &'a RunMetrics) -> Self {
        CsvRow {
            algorithm: &r.algorithm,
            graph: &r.graph,
            num_vertices: r.num_vertices,
            num_edges: r.num_edges,
            workers: r.workers,
            seed: r.seed,
            repeat: r.repeat,
            wall_time_s: r.wall_time_s,
            matched_pairs: r.matched_pairs,
            matched_endpoint_pct: r.matched_endpoint_pct,
            cas_executions: r.cas_executions,
            cas_pct: r.cas_pct,
            iterations: r.iterations,
            verified: r.verified,
        }
    }
}

struct RecordSink {
    json: Box<dyn Write>,
    csv: Option<csv::Writer<File>>,
}

impl RecordSink {
    fn open(args: &RunArgs) -> anyhow::Result<RecordSink> {
        let json: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(std::io::stdout().lock()),
        };
        let csv = match &args.csv {
            Some(path) => Some(csv::Writer::from_writer(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => None,
        };
        Ok(RecordSink { json, csv })
    }

    fn write(&mut self, record: &RunMetrics) -> anyhow::Result<()> {
        serde_json::to_writer(&mut self.json, record)?;
        self.json.write_all(b"\n")?;
        if let Some(writer) = &mut self.csv {
            writer.serialize(CsvRow::from(record))?;
        }
        Ok(())
    }

    fn finish(mut self) -> anyhow::Result<()> {
        self.json.flush()?;
        if let Some(writer) = &mut self.csv {
            writer.flush()?;
        }
        Ok(())
    }
}

fn cmd_report(args: &ReportArgs) -> anyhow::Result<()> {
    let reader = BufReader::new(
        File::open(&args.records)
            .with_context(|| format!("opening {}", args.records.display()))?,
    );
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RunMetrics = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: bad record", args.records.display(), idx + 1))?;
        records.push(record);
    }
    let summary = compare_report(&records)?;
    println!("{}", serde_json::to_string(&summary)?);
    Ok(())
}
