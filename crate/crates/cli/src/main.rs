//! `bcolor`: analysis, b-coloring decision, precoloring enumeration,
//! kernelization, instance generation and certificate verification.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bcolor::dichotomy::{solve_k_eq_delta_with, solve_k_eq_m_minus_1_with, solve_k_eq_m_with};
use bcolor::enumerate::enumerate_parallel_with;
use bcolor::exact::b_chromatic_number_with;
use bcolor::fpt::{kernelize_with, solve_delta_ell_with, solve_m_param_delta_with};
use bcolor::{
    degree_stats, ell_k, gen_classic, gen_havet, gen_random, gen_star_pad_delta, gen_star_pad_m, m_degree,
    parse_dimacs, select_algorithm, solve_exact_with, verify_certificate, write_dimacs, Algorithm, BCertificate,
    Budget, CertificateJson, GadgetError, GadgetInstance, Graph, KernelMode, KernelResult, Meter, Precoloring,
    PrecoloringStream, SolveError, SolveOptions, SolveOutcome, TupleOrder,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "bcolor", version, about = "b-coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Abort exponential searches after this many search nodes.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Abort exponential searches after this many seconds.
    #[arg(long, global = true, value_name = "S")]
    budget_seconds: Option<f64>,
    /// Seed for random instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the enumeration-driven searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Degree invariants and the solver `auto` would pick.
    Analyze {
        /// Number of colors; defaults to m(G).
        #[arg(short, value_parser = positive)]
        k: Option<usize>,
        /// DIMACS file, or `-` for standard input.
        input: String,
    },
    /// Decide whether the graph has a b-coloring with k colors.
    Solve {
        /// Number of colors; implied by --algo m|delta|m-minus-1.
        #[arg(short, value_parser = positive)]
        k: Option<usize>,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: AlgoChoice,
        input: String,
    },
    /// Compute the b-chromatic number with a witness.
    ChromaticB { input: String },
    /// List the minimal b-precolorings with k colors, one JSON object per line.
    Enum {
        #[arg(short, value_parser = positive)]
        k: usize,
        /// Only tuples of b-vertices in increasing order (one per color permutation class).
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        limit: Option<usize>,
        input: String,
    },
    /// Reduce to a kernel, or solve outright when the construction applies.
    Kernelize {
        #[arg(short, value_parser = positive)]
        k: usize,
        #[arg(long, value_parser = parse_mode)]
        mode: KernelMode,
        /// Write `{"bound":B,"k":K}` here instead of a `c kernel` comment.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        input: String,
    },
    /// Generate an instance in DIMACS format.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Write the provenance JSON here instead of a `c provenance` comment.
        #[arg(long, global = true)]
        sidecar: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        /// Expected number of colors; defaults to the certificate's own k.
        #[arg(short, value_parser = positive)]
        k: Option<usize>,
        /// Certificate JSON, bare or as emitted by `solve`.
        #[arg(long)]
        coloring: PathBuf,
        input: String,
    },
    /// Run every applicable solver and report timings.
    Bench {
        #[arg(short, value_parser = positive)]
        k: Option<usize>,
        input: String,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Reduction from 3-edge-coloring of a cubic graph.
    Havet { input: String },
    /// Star padding of a 4-regular graph.
    StarPad {
        #[arg(long, value_enum)]
        target: PadTarget,
        #[arg(short, default_value_t = 1, value_parser = positive)]
        c: usize,
        input: String,
    },
    /// Named family such as `path:5`, `complete-bipartite:3,3` or `circulant:9:1,2`.
    Classic { spec: String },
    /// Erdős–Rényi G(n, p) driven by --seed.
    Random {
        #[arg(short, value_parser = positive)]
        n: usize,
        #[arg(short)]
        p: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PadTarget {
    Delta,
    M,
}

#[derive(Clone, Copy)]
enum AlgoChoice {
    Auto,
    Fixed(Algorithm),
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_algo(s: &str) -> Result<AlgoChoice, String> {
    if s == "auto" {
        return Ok(AlgoChoice::Auto);
    }
    s.parse().map(AlgoChoice::Fixed)
}

fn parse_mode(s: &str) -> Result<KernelMode, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("output closed")]
    ClosedOutput,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Budget { .. } => 4,
            CliError::Internal(_) => 5,
            CliError::ClosedOutput => 0,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExhausted { nodes } => CliError::Budget { nodes },
            SolveError::Precondition(msg) => CliError::Usage(msg),
            SolveError::Internal(msg) => CliError::Internal(msg),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return CliError::ClosedOutput;
        }
        CliError::Input(format!("i/o error: {e}"))
    }
}

/// Outcome of a successful command.
enum Verdict {
    Yes,
    No,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(CliError::ClosedOutput) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bcolor: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let opts = solve_options(&cli.global)?;
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Analyze { k, input } => analyze(&read_graph(&input)?, k, &mut out),
        Command::Solve { k, algo, input } => {
            let g = read_graph(&input)?;
            let (algorithm, k) = resolve(&g, k, algo)?;
            let outcome = dispatch(&g, k, algorithm, &opts)?;
            log::info!("{} nodes in {:?}", outcome.stats.nodes, outcome.stats.elapsed);
            report(&outcome, k, &mut out)
        }
        Command::ChromaticB { input } => {
            let g = read_graph(&input)?;
            let (k, outcome) = b_chromatic_number_with(&g, &opts)?;
            let cert = outcome
                .certificate()
                .ok_or_else(|| CliError::Internal("b-chromatic number without witness".into()))?;
            writeln!(out, "{k}")?;
            writeln!(out, "{}", to_json(&cert.to_json()))?;
            Ok(Verdict::Yes)
        }
        Command::Enum {
            k,
            canonical,
            limit,
            input,
        } => {
            let g = read_graph(&input)?;
            let order = if canonical { TupleOrder::Increasing } else { TupleOrder::Ordered };
            enumerate(&g, k, order, limit, &cli.global, &opts, &mut out)
        }
        Command::Kernelize {
            k,
            mode,
            sidecar,
            input,
        } => {
            let g = read_graph(&input)?;
            match kernelize_with(&g, k, mode, &opts)? {
                KernelResult::Solved(outcome) => report(&outcome, k, &mut out),
                KernelResult::Reduced { graph, k, size_bound } => {
                    let meta = json!({ "bound": size_bound, "k": k }).to_string();
                    emit_dimacs(&graph, "kernel", &meta, sidecar.as_ref(), &mut out)?;
                    Ok(Verdict::Yes)
                }
            }
        }
        Command::Gen { family, sidecar } => {
            let (graph, meta) = generate(family, cli.global.seed)?;
            emit_dimacs(&graph, "provenance", &meta, sidecar.as_ref(), &mut out)?;
            Ok(Verdict::Yes)
        }
        Command::Verify { k, coloring, input } => {
            let g = read_graph(&input)?;
            verify(&g, k, &coloring, &mut out)
        }
        Command::Bench { k, input } => bench(&read_graph(&input)?, k, &opts, &mut out),
    }
}

fn solve_options(global: &Global) -> Result<SolveOptions, CliError> {
    let max_time = global
        .budget_seconds
        .map(|s| {
            Duration::try_from_secs_f64(s)
                .map_err(|_| CliError::Usage(format!("--budget-seconds {s} is not a valid duration")))
        })
        .transpose()?;
    Ok(SolveOptions {
        budget: Budget {
            max_nodes: global.budget_nodes,
            max_time,
        },
        jobs: global.jobs,
        ..SolveOptions::default()
    })
}

fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    parse_dimacs(&read_text(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    edges: usize,
    delta: usize,
    m_degree: usize,
    k: usize,
    ell_k: usize,
    algorithm: &'static str,
    degree_histogram: Vec<usize>,
}

fn analyze(g: &Graph, k: Option<usize>, out: &mut impl Write) -> Result<Verdict, CliError> {
    let stats = degree_stats(g).map_err(|e| CliError::Input(e.to_string()))?;
    let k = k.unwrap_or(stats.m_degree);
    let analysis = Analysis {
        n: g.n(),
        edges: g.edge_count(),
        delta: stats.delta,
        m_degree: stats.m_degree,
        k,
        ell_k: ell_k(g, k),
        algorithm: select_algorithm(g, k).as_str(),
        degree_histogram: stats.degree_histogram,
    };
    writeln!(out, "{}", to_json(&analysis))?;
    Ok(Verdict::Yes)
}

/// The color count a fixed-k solver is restricted to, if any.
fn designated_k(g: &Graph, algorithm: Algorithm) -> Option<usize> {
    match algorithm {
        Algorithm::KEqM => Some(m_degree(g)),
        Algorithm::KEqDelta => Some(g.max_degree()),
        Algorithm::KEqMMinus1 => Some(m_degree(g).saturating_sub(1)),
        _ => None,
    }
}

fn resolve(g: &Graph, k: Option<usize>, algo: AlgoChoice) -> Result<(Algorithm, usize), CliError> {
    let fixed = match algo {
        AlgoChoice::Auto => {
            let k = k.ok_or_else(|| CliError::Usage("solve needs -k unless --algo is m, delta or m-minus-1".into()))?;
            return Ok((select_algorithm(g, k), k));
        }
        AlgoChoice::Fixed(a) => a,
    };
    match (designated_k(g, fixed), k) {
        (Some(d), Some(k)) if d != k => Err(CliError::Usage(format!(
            "--algo {fixed} only decides k = {d} for this graph, got -k {k}"
        ))),
        (Some(0), None) => Err(CliError::Usage(format!("--algo {fixed} does not apply: designated k is 0"))),
        (Some(d), _) => Ok((fixed, d)),
        (None, Some(k)) => Ok((fixed, k)),
        (None, None) => Err(CliError::Usage(format!("--algo {fixed} needs -k"))),
    }
}

fn dispatch(g: &Graph, k: usize, algorithm: Algorithm, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    match algorithm {
        Algorithm::Exact => solve_exact_with(g, k, opts),
        Algorithm::KEqM => solve_k_eq_m_with(g, opts),
        Algorithm::KEqDelta => solve_k_eq_delta_with(g, opts),
        Algorithm::KEqMMinus1 => solve_k_eq_m_minus_1_with(g, opts),
        Algorithm::FptDelta => solve_m_param_delta_with(g, k, opts),
        Algorithm::FptEll => solve_delta_ell_with(g, k, opts),
    }
}

#[derive(Serialize)]
struct SolveReport {
    answer: &'static str,
    k: usize,
    algorithm: &'static str,
    case: Option<&'static str>,
    certificate: Option<CertificateJson>,
}

fn report(outcome: &SolveOutcome, k: usize, out: &mut impl Write) -> Result<Verdict, CliError> {
    let certificate = outcome.certificate().map(BCertificate::to_json);
    let verdict = if certificate.is_some() { Verdict::Yes } else { Verdict::No };
    let line = SolveReport {
        answer: if certificate.is_some() { "YES" } else { "NO" },
        k,
        algorithm: outcome.algorithm.as_str(),
        case: outcome.case_taken,
        certificate,
    };
    writeln!(out, "{}", to_json(&line))?;
    Ok(verdict)
}

fn precoloring_line(p: &Precoloring) -> String {
    let pairs: Vec<String> = p.iter().map(|(v, c)| format!("\"{}\":{c}", v + 1)).collect();
    format!("{{\"k\":{},\"assignment\":{{{}}}}}", p.k(), pairs.join(","))
}

fn enumerate(
    g: &Graph,
    k: usize,
    order: TupleOrder,
    limit: Option<usize>,
    global: &Global,
    opts: &SolveOptions,
    out: &mut impl Write,
) -> Result<Verdict, CliError> {
    let meter = Meter::new(opts.budget);
    let limit = limit.unwrap_or(usize::MAX);
    if global.jobs > 1 {
        let all = enumerate_parallel_with(g, k, order, global.jobs, &meter).map_err(|_| CliError::Budget {
            nodes: meter.nodes(),
        })?;
        for p in all.iter().take(limit) {
            writeln!(out, "{}", precoloring_line(p))?;
        }
        return Ok(Verdict::Yes);
    }
    let mut stream = PrecoloringStream::new(g, k, order).with_meter(&meter);
    for p in stream.by_ref().take(limit) {
        writeln!(out, "{}", precoloring_line(&p))?;
    }
    if stream.budget_exhausted() {
        return Err(CliError::Budget { nodes: meter.nodes() });
    }
    Ok(Verdict::Yes)
}

/// Writes `g` as DIMACS, with `meta` either in a sidecar file or as a leading
/// `c <label> <meta>` comment.
fn emit_dimacs(
    g: &Graph,
    label: &str,
    meta: &str,
    sidecar: Option<&PathBuf>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    match sidecar {
        Some(path) => fs::write(path, format!("{meta}\n"))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => writeln!(out, "c {label} {meta}")?,
    }
    write!(out, "{}", write_dimacs(g))?;
    Ok(())
}

fn gadget_error(e: GadgetError) -> CliError {
    match e {
        GadgetError::InvalidParams(msg) => CliError::Usage(msg),
        GadgetError::InvariantViolated { .. } => CliError::Internal(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn generate(family: Family, seed: u64) -> Result<(Graph, String), CliError> {
    let gadget = |inst: GadgetInstance| {
        let meta = inst.provenance_json();
        (inst.graph, meta)
    };
    match family {
        Family::Havet { input } => gen_havet(&read_graph(&input)?).map(gadget).map_err(gadget_error),
        Family::StarPad { target, c, input } => {
            let base = read_graph(&input)?;
            let inst = match target {
                PadTarget::Delta => gen_star_pad_delta(&base, c),
                PadTarget::M => gen_star_pad_m(&base, c),
            };
            inst.map(gadget).map_err(gadget_error)
        }
        Family::Classic { spec } => {
            let g = gen_classic(&spec).map_err(gadget_error)?;
            let meta = json!({ "construction": "classic", "source": spec, "n": g.n() }).to_string();
            Ok((g, meta))
        }
        Family::Random { n, p } => {
            let g = gen_random(n, p, seed).map_err(gadget_error)?;
            let meta = json!({ "construction": "random", "source": "G(n,p)", "n": n, "p": p, "seed": seed }).to_string();
            Ok((g, meta))
        }
    }
}

fn verify(g: &Graph, k: Option<usize>, path: &Path, out: &mut impl Write) -> Result<Verdict, CliError> {
    let shown = path.display().to_string();
    let text = read_text(&shown)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    let body = match value.get("certificate") {
        Some(serde_json::Value::Null) => return Err(CliError::Input(format!("{shown}: no certificate (answer NO)"))),
        Some(inner) => inner.clone(),
        None => value,
    };
    let wire: CertificateJson = serde_json::from_value(body).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    let cert = BCertificate::from_json(&wire).map_err(|e| CliError::Input(format!("{shown}: {e}")))?;
    let report = verify_certificate(g, k.unwrap_or(cert.k), &cert);
    let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    writeln!(out, "{}", json!({ "valid": report.passed(), "violations": violations }))?;
    Ok(if report.passed() { Verdict::Yes } else { Verdict::No })
}

fn bench(g: &Graph, k: Option<usize>, opts: &SolveOptions, out: &mut impl Write) -> Result<Verdict, CliError> {
    let k = k.unwrap_or_else(|| m_degree(g));
    let mut answers = Vec::new();
    for algorithm in Algorithm::ALL {
        if designated_k(g, algorithm).is_some_and(|d| d != k) {
            continue;
        }
        if algorithm == Algorithm::FptDelta && ell_k(g, k) > k {
            continue;
        }
        let start = Instant::now();
        let line = match dispatch(g, k, algorithm, opts) {
            Ok(outcome) => {
                answers.push(outcome.is_yes());
                json!({
                    "algorithm": algorithm.as_str(),
                    "answer": if outcome.is_yes() { "YES" } else { "NO" },
                    "case": outcome.case_taken,
                    "nodes": outcome.stats.nodes,
                    "millis": start.elapsed().as_secs_f64() * 1e3,
                })
            }
            Err(e) => json!({ "algorithm": algorithm.as_str(), "error": e.to_string() }),
        };
        writeln!(out, "{line}")?;
    }
    if answers.windows(2).any(|w| w[0] != w[1]) {
        return Err(CliError::Internal(format!("solvers disagree at k = {k}")));
    }
    Ok(Verdict::Yes)
}
