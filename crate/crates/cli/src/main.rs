use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use oxford_core::distributions::solve_parameter;
use oxford_core::generators::{Model, ModelSpec, DEFAULT_MAX_ATTEMPTS};
use oxford_core::graph::Component;
use oxford_core::harness::{
    aggregate, run_count_ratio, run_lemma1, run_table1, sweep_connectivity, sweep_giant, to_csv,
    ConnectivityConfig, CountRatioConfig, GiantConfig, Sampler,
};
use oxford_core::ingest::{self, emit_edge_list, Dataset};
use oxford_core::oracle::{enumerate_trees, verify_counts, SEQUENCE_CAP};
use oxford_core::theory::{labeled_tree_count, predict};
use oxford_core::Error;
use serde::Serialize;

/// Random bipartite multigraphs with minimum degree one.
#[derive(Debug, Parser)]
#[command(name = "oxford", version)]
struct Cli {
    /// Worker threads for replicate loops; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analytic predictions for GR1(m, n, t) as JSON.
    Predict {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 4)]
        max_tree: usize,
    },
    /// Sample a graph and write it as an edge list.
    Gen(GenArgs),
    /// Component census of an edge list or 0/1 matrix as JSON.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_tree: usize,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
    /// Expected against observed small trees for the genome comparisons.
    Table1 {
        /// Directory of edge lists; the bundled comparisons when omitted.
        #[arg(long)]
        datasets: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte Carlo sweeps driven by a JSON config; writes CSV.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        #[arg(long)]
        config: PathBuf,
        /// One row per grid point instead of one per replicate.
        #[arg(long)]
        aggregate: bool,
        /// JSON array instead of CSV.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check closed forms and samplers against exhaustive enumeration.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest (mn)^t enumerated, e.g. 1e7.
        #[arg(long, value_parser = parse_cap, default_value = "1e7")]
        cap: u64,
        /// TP samples per instance for the law comparison.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "p", conflicts_with = "p")]
    t: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Gr,
    Gr1,
    Tp,
    Er,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Edges,
    Matrix,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepKind {
    Giant,
    Connectivity,
    CountRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Lemma1,
    All,
}

fn parse_cap(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(v >= 1.0 && v <= u64::MAX as f64) || v.fract() != 0.0 {
        return Err(format!("cap must be a positive integer, got {s}"));
    }
    Ok(v as u64)
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => 2,
            Error::Csv(c) if c.is_io_error() => 2,
            Error::Json(j) if j.is_io() => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn validation(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64);
        let seed = oxford_core::rng::splitmix64(nanos);
        eprintln!("seed: {seed} (pass --seed {seed} to reproduce)");
        seed
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn read_config<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| validation(format!("config {}: {e}", path.display())))
}

fn gen(args: &GenArgs) -> Result<(), Failure> {
    let (m, n) = (args.m, args.n);
    let need_t = || {
        args.t.ok_or_else(|| {
            validation(format!("--t is required for --model {:?}", args.model).to_lowercase())
        })
    };
    let model = match args.model {
        ModelKind::Gr => Model::Gr { m, n, t: need_t()? },
        ModelKind::Gr1 => Model::Gr1 {
            m,
            n,
            t: need_t()?,
            max_attempts: args.max_attempts,
        },
        ModelKind::Tp => Model::Tp {
            m,
            n,
            t: need_t()?,
            max_attempts: args.max_attempts,
        },
        ModelKind::Er => Model::Er {
            m,
            n,
            p: args
                .p
                .ok_or_else(|| validation("--p is required for --model er"))?,
        },
    };
    let spec = ModelSpec::new(model, resolve_seed(args.seed));
    let graph = spec.generate()?;
    let d = Dataset {
        name: model.name().into(),
        left_labels: (1..=m).map(|i| format!("L{i}")).collect(),
        right_labels: (1..=n).map(|j| format!("R{j}")).collect(),
        graph,
        published: None,
        warnings: Vec::new(),
    };
    let header = format!("# {}\n", serde_json::to_string(&spec).map_err(Error::from)?);
    write_output(args.out.as_deref(), &(header + &emit_edge_list(&d)?))
}

#[derive(Serialize)]
struct Analysis<'a> {
    name: &'a str,
    m: usize,
    n: usize,
    t: usize,
    /// Recomputed from `f(a) = t/m`, `f(b) = t/n`; absent when undefined.
    a: Option<f64>,
    b: Option<f64>,
    ab: Option<f64>,
    connected: bool,
    component_count: usize,
    largest: usize,
    second_largest: usize,
    isolated_left: usize,
    isolated_right: usize,
    parallel_edges: bool,
    trees: Vec<Vec<u64>>,
    components: &'a [Component],
    left_degrees: Vec<usize>,
    right_degrees: Vec<usize>,
    warnings: &'a [String],
    published_mismatches: Vec<String>,
}

fn analyze(input: &Path, max_tree: usize, format: InputFormat) -> Result<(), Failure> {
    if max_tree == 0 {
        return Err(validation("--max-tree must be at least 1"));
    }
    let text = read_file(input)?;
    let mut d = match format {
        InputFormat::Auto => ingest::parse_auto(&text)?,
        InputFormat::Edges => ingest::parse_edge_list(&text)?,
        InputFormat::Matrix => ingest::parse_matrix(&text)?,
    };
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default();
    d.name = stem.to_owned();
    d.published = ingest::published_summary(stem);
    if d.name.is_empty() {
        d.name = input.display().to_string();
    }
    let g = &d.graph;
    let s = d.summary();
    let rate = |side: usize| {
        (side > 0)
            .then(|| solve_parameter(g.t() as f64 / side as f64).ok())
            .flatten()
            .map(|p| p.a())
    };
    let (a, b) = (rate(g.m()), rate(g.n()));
    let report = Analysis {
        name: &d.name,
        m: g.m(),
        n: g.n(),
        t: g.t(),
        a,
        b,
        ab: a.zip(b).map(|(a, b)| a * b),
        connected: s.is_connected(),
        component_count: s.components.len(),
        largest: s.largest_size,
        second_largest: s.second_largest_size,
        isolated_left: s.isolated_left,
        isolated_right: s.isolated_right,
        parallel_edges: g.has_parallel_edges(),
        trees: s.tree_census(max_tree, max_tree).rows(),
        components: &s.components,
        left_degrees: g.left_degrees(),
        right_degrees: g.right_degrees(),
        warnings: &d.warnings,
        published_mismatches: d.published_mismatches(),
    };
    write_output(None, &json(&report)?)
}

fn table1(datasets: Option<&Path>, reps: usize, seed: Option<u64>) -> Result<(), Failure> {
    if reps == 0 {
        return Err(validation("--reps must be at least 1"));
    }
    let data = match datasets {
        Some(dir) => ingest::load_dir(dir).map_err(|e| match e {
            Error::Io(io) => Failure {
                code: 2,
                message: format!("cannot read {}: {io}", dir.display()),
            },
            other => other.into(),
        })?,
        None => ingest::fixtures(),
    };
    if data.is_empty() {
        return Err(validation("no datasets found"));
    }
    let report = run_table1(&data, reps, resolve_seed(seed), Sampler::Tp)?;
    write_output(None, &json(&report)?)
}

fn sweep(
    kind: SweepKind,
    config: &Path,
    aggregated: bool,
    as_json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    fn emit<T: Serialize>(rows: &[T], as_json: bool) -> Result<String, Failure> {
        if as_json {
            json(&rows)
        } else {
            Ok(to_csv(rows)?)
        }
    }
    let text = match kind {
        SweepKind::Giant | SweepKind::Connectivity => {
            let rows = match kind {
                SweepKind::Giant => sweep_giant(&read_config::<GiantConfig>(config)?)?,
                _ => sweep_connectivity(&read_config::<ConnectivityConfig>(config)?)?,
            };
            if aggregated {
                emit(&aggregate(&rows)?, as_json)?
            } else {
                emit(&rows, as_json)?
            }
        }
        SweepKind::CountRatio => {
            if aggregated {
                return Err(validation(
                    "--aggregate does not apply to count-ratio sweeps",
                ));
            }
            emit(
                &run_count_ratio(&read_config::<CountRatioConfig>(config)?)?,
                as_json,
            )?
        }
    };
    write_output(out, &text)
}

#[derive(Serialize)]
struct CheckLine {
    check: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport {
    seed: Option<u64>,
    pass: bool,
    checks: Vec<CheckLine>,
}

fn verify(suite: Suite, cap: u64, samples: u64, seed: Option<u64>) -> Result<bool, Failure> {
    let mut checks = Vec::new();
    let mut used_seed = None;
    if matches!(suite, Suite::Oracle | Suite::All) {
        for c in verify_counts(cap)? {
            checks.push(CheckLine {
                check: format!("count ({},{},{})", c.m, c.n, c.t),
                pass: c.agrees,
                detail: format!(
                    "enumerated {}, closed form {}, from log {}",
                    c.enumerated, c.closed_form, c.from_log
                ),
            });
        }
        for i in 1..=20usize {
            for j in (1..=20usize).filter(|j| i * j <= 20) {
                let enumerated = enumerate_trees(i, j)?;
                let formula = labeled_tree_count(i, j);
                checks.push(CheckLine {
                    check: format!("trees ({i},{j})"),
                    pass: formula == enumerated.into(),
                    detail: format!("enumerated {enumerated}, formula {formula}"),
                });
            }
        }
    }
    if matches!(suite, Suite::Lemma1 | Suite::All) {
        if samples == 0 {
            return Err(validation("--samples must be at least 1"));
        }
        let seed = resolve_seed(seed);
        used_seed = Some(seed);
        let instances: Vec<_> = [(1, 1, 3), (2, 2, 2), (2, 2, 3), (2, 3, 4)]
            .into_iter()
            .filter(|&(m, n, t)| {
                oxford_core::oracle::sequence_space(m, n, t, cap.max(SEQUENCE_CAP)).is_some()
            })
            .collect();
        for r in run_lemma1(&instances, samples, seed)? {
            checks.push(CheckLine {
                check: format!("tp law ({},{},{})", r.m, r.n, r.t),
                pass: r.pass,
                detail: format!(
                    "tv {:.6} over {} outcomes, threshold {:.6}",
                    r.tv_distance, r.outcomes, r.threshold
                ),
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    write_output(
        None,
        &json(&VerifyReport {
            seed: used_seed,
            pass,
            checks,
        })?,
    )?;
    Ok(pass)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(validation("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: 3,
                message: e.to_string(),
            })?;
    }
    match cli.command {
        Command::Predict { m, n, t, max_tree } => {
            write_output(None, &json(&predict(m, n, t, max_tree)?)?)?
        }
        Command::Gen(args) => gen(&args)?,
        Command::Analyze {
            input,
            max_tree,
            format,
        } => analyze(&input, max_tree, format)?,
        Command::Table1 {
            datasets,
            reps,
            seed,
        } => table1(datasets.as_deref(), reps, seed)?,
        Command::Sweep {
            kind,
            config,
            aggregate,
            json,
            out,
        } => sweep(kind, &config, aggregate, json, out.as_deref())?,
        Command::Verify {
            suite,
            cap,
            samples,
            seed,
        } => {
            if !verify(suite, cap, samples, seed)? {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(3),
    }
}
