//! `pr` — compute, verify, bound, and tabulate minimum coprime numbers.
//!
//! Exit codes: `0` success, `1` verification/certification failure (a value
//! could not be certified, a labeling failed its checks, a sweep found an
//! inconsistency), `2` usage errors.
//!
//! Output formats: `--format text` (default) for humans, `--format json`
//! for machine-readable reports (byte-identical across runs for equal
//! parameters and seeds — wall-clock runtimes are deliberately excluded),
//! and `--format csv`. Table CSVs use the frozen column schema
//! `family,m,n,pr,provenance,certified,seconds`.
//!
//! The `PR_THREADS` environment variable sets the default worker count for
//! both the solver and table sweeps; `--threads` overrides it per run.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coprime::{
    complete_bipartite_labeling, corona_labeling, corona_table, corona_threshold_table,
    cycle_join_labeling, min_coprime_number_exact, monotonicity_bound, parse_family,
    path_join_labeling, path_join_sweep, pr_formula, random_pr_experiment, BoundReport,
    ConstructionError, CycleJoinKind, ExactOutcome, ExperimentError, FamilyExpr, FormulaOutcome,
    Graph, LabelingDoc, PrKind, PrValue, Primes, Provenance, SearchConfig, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "pr",
    version,
    about = "Minimum coprime numbers: compute, verify, bound, and tabulate"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute pr(G) for a family expression or an edge-list file.
    Compute(ComputeArgs),
    /// Check a labeling document (JSON) against its graph.
    Verify {
        /// Path to a labeling JSON file.
        file: PathBuf,
    },
    /// Bounds on pr(G) without running the full solver.
    Bounds {
        /// Family expression or edge-list file path.
        graph: String,
    },
    /// Parameter sweeps with certified values.
    #[command(subcommand)]
    Table(TableCommand),
    /// Check that every x in 1..=x_max has a prime p in (x, 2x] with
    /// p mod 11 distinct from 1 and 10.
    Mod11 {
        #[arg(long, default_value_t = 1331)]
        x_max: u64,
    },
    /// Seeded random-graph study: exact pr per G(n, p) trial with bounds.
    Random(RandomArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Family expression (e.g. "join(P(7),P(7))", "corona(K(17),E(2))") or
    /// a path to an edge-list file. Expressions take precedence.
    graph: String,
    /// How to obtain the value.
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Exact search: largest label budget to try before giving up.
    #[arg(long)]
    max_k: Option<u64>,
    /// Exact search: cap on search-tree nodes (per worker).
    #[arg(long)]
    node_limit: Option<u64>,
    /// Exact search: wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Solver worker threads (default: PR_THREADS or 1).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form where proven, else construction, else exact search.
    Auto,
    /// Closed form only; fails where none is proven.
    Formula,
    /// Witness construction only.
    Construct,
    /// Exact backtracking search only.
    Exact,
}

#[derive(Subcommand)]
enum TableCommand {
    /// pr(corona(K(n), E(m))) over a grid.
    Corona {
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
    },
    /// join(P(m), P(n)) sweep; rows whose exact value beats the parity
    /// lower bound are flagged.
    Pathjoin {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        #[arg(long, default_value_t = 24)]
        m_max: usize,
        /// Largest instance (total vertices) sent to exact search when no
        /// certified value is otherwise available.
        #[arg(long, default_value_t = 17)]
        exact_max_vertices: usize,
    },
    /// Largest n per m for which corona(K(n), E(m)) is prime.
    Threshold {
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        m_max: usize,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Solver worker threads (default: PR_THREADS or 1).
    #[arg(long)]
    threads: Option<usize>,
}

/// Failures after successful argument parsing.
enum Failure {
    /// Exit 1: a value could not be certified or a check failed.
    Certification(String),
    /// Exit 2: the request itself was unusable.
    Usage(String),
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`pr … | head`) instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(t) = env_threads() {
        // Table sweeps use the global rayon pool; a failure here only means
        // the pool already exists, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Certification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn env_threads() -> Option<usize> {
    std::env::var("PR_THREADS").ok().and_then(|s| s.parse().ok()).filter(|&t| t >= 1)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let primes = Primes::new();
    match cli.command {
        Command::Compute(args) => cmd_compute(args, cli.format, &primes),
        Command::Verify { file } => cmd_verify(&file, cli.format),
        Command::Bounds { graph } => cmd_bounds(&graph, cli.format, &primes),
        Command::Table(which) => cmd_table(which, cli.format, &primes),
        Command::Mod11 { x_max } => cmd_mod11(x_max, cli.format, &primes),
        Command::Random(args) => cmd_random(args, cli.format, &primes),
    }
}

// ---------------------------------------------------------------- compute

struct Resolved {
    name: String,
    expr: Option<FamilyExpr>,
    graph: Graph,
}

/// Tries the expression language first, then an edge-list file.
fn resolve_graph_arg(arg: &str) -> Result<Resolved, Failure> {
    match parse_family(arg) {
        Ok(expr) => {
            let graph = expr
                .build()
                .map_err(|e| Failure::Usage(format!("cannot build {arg}: {e}")))?;
            Ok(Resolved { name: expr.to_string(), expr: Some(expr), graph })
        }
        Err(parse_err) => {
            let path = std::path::Path::new(arg);
            if path.exists() {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?;
                let graph = Graph::from_edge_list_str(&text)
                    .map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
                Ok(Resolved { name: arg.to_string(), expr: None, graph })
            } else {
                Err(Failure::Usage(format!(
                    "{arg:?} is neither a family expression ({parse_err}) nor an existing file"
                )))
            }
        }
    }
}

fn search_config(args: &ComputeArgs) -> SearchConfig {
    SearchConfig {
        max_k: args.max_k,
        node_limit: args.node_limit,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        parallel_width: args.threads.or_else(env_threads).unwrap_or(1),
        ..SearchConfig::default()
    }
}

/// Witness construction for the covered shapes; `None` when no
/// construction applies to the shape at all.
fn construct_value(
    expr: &FamilyExpr,
    primes: &Primes,
) -> Result<Option<PrValue>, ConstructionError> {
    match expr {
        FamilyExpr::Corona(g, h) => match (g.as_ref(), h.as_ref()) {
            (FamilyExpr::Complete(n), FamilyExpr::Empty(m)) => {
                corona_labeling(*n, *m, primes).map(Some)
            }
            _ => Ok(None),
        },
        FamilyExpr::Join(a, b) => match (a.as_ref(), b.as_ref()) {
            (FamilyExpr::Path(m), FamilyExpr::Path(n)) => {
                path_join_labeling(*m, *n, primes).map(Some)
            }
            (FamilyExpr::Cycle(m), FamilyExpr::Cycle(n)) => {
                cycle_join_labeling(*m, *n, CycleJoinKind::CycleCycle, primes).map(Some)
            }
            (FamilyExpr::Cycle(m), FamilyExpr::Path(n)) => {
                cycle_join_labeling(*m, *n, CycleJoinKind::CyclePath, primes).map(Some)
            }
            (FamilyExpr::Path(m), FamilyExpr::Cycle(n)) => {
                cycle_join_labeling(*m, *n, CycleJoinKind::PathCycle, primes).map(Some)
            }
            _ => Ok(None),
        },
        FamilyExpr::Bipartite(a, b) => {
            let (small, large) = (*a.min(b), *a.max(b));
            let v = complete_bipartite_labeling(small, large, primes)?;
            if a > b {
                // The construction labels the small part first; this
                // expression lists the large part first.
                let witness = v.witness().unwrap().swap_join_blocks(small, large);
                Ok(Some(PrValue::upper_bound(v.value(), v.provenance(), witness)))
            } else {
                Ok(Some(v))
            }
        }
        _ => Ok(None),
    }
}

fn exact_value(g: &Graph, cfg: &SearchConfig, primes: &Primes) -> Result<PrValue, Failure> {
    match min_coprime_number_exact(g, primes, cfg) {
        ExactOutcome::Exact(v) => Ok(v),
        ExactOutcome::Inconclusive { reason } => {
            Err(Failure::Certification(format!("exact search was inconclusive: {reason}")))
        }
    }
}

fn cmd_compute(args: ComputeArgs, format: Format, primes: &Primes) -> Result<(), Failure> {
    let resolved = resolve_graph_arg(&args.graph)?;
    let cfg = search_config(&args);
    let start = Instant::now();

    let need_expr = |method: &str| {
        Failure::Usage(format!("--method {method} needs a family expression, not an edge list"))
    };
    let value = match args.method {
        Method::Formula => {
            let expr = resolved.expr.as_ref().ok_or_else(|| need_expr("formula"))?;
            match pr_formula(expr, primes).map_err(construction_failure)? {
                FormulaOutcome::Covered(v) => v,
                FormulaOutcome::NotCovered { reason } => {
                    return Err(Failure::Certification(format!(
                        "no covered closed form for {}: {reason}",
                        resolved.name
                    )))
                }
            }
        }
        Method::Construct => {
            let expr = resolved.expr.as_ref().ok_or_else(|| need_expr("construct"))?;
            match construct_value(expr, primes) {
                Ok(Some(v)) => v,
                Ok(None) => {
                    return Err(Failure::Usage(format!(
                        "no construction covers {}; covered shapes: corona(K(n),E(m)), \
                         join(P/C, P/C), Kbip(m,n)",
                        resolved.name
                    )))
                }
                Err(e) => return Err(construction_failure(e)),
            }
        }
        Method::Exact => exact_value(&resolved.graph, &cfg, primes)?,
        Method::Auto => compute_auto(&resolved, &cfg, primes)?,
    };
    let seconds = start.elapsed().as_secs_f64();

    if let Some(w) = value.witness() {
        w.verify(&resolved.graph).map_err(|e| {
            Failure::Certification(format!("produced witness failed verification: {e}"))
        })?;
    }
    print_value(&resolved.name, &value, seconds, format);
    Ok(())
}

/// Preference order: closed form where proven, then construction (accepted
/// immediately only when exact), then exact search; an upper-bound
/// construction is still reported if the search cannot finish.
fn compute_auto(resolved: &Resolved, cfg: &SearchConfig, primes: &Primes) -> Result<PrValue, Failure> {
    let Some(expr) = resolved.expr.as_ref() else {
        return exact_value(&resolved.graph, cfg, primes);
    };
    if let FormulaOutcome::Covered(v) = pr_formula(expr, primes).map_err(construction_failure)? {
        return Ok(v);
    }
    let mut fallback: Option<PrValue> = None;
    if let Ok(Some(v)) = construct_value(expr, primes) {
        if v.kind() == PrKind::Exact {
            return Ok(v);
        }
        fallback = Some(v);
    }
    match exact_value(&resolved.graph, cfg, primes) {
        Ok(v) => Ok(v),
        Err(e) => fallback.ok_or(e),
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    Failure::Certification(e.to_string())
}

#[derive(Serialize)]
struct ValueOut<'a> {
    graph: &'a str,
    value: u64,
    kind: PrKind,
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [u64]>,
}

fn print_value(name: &str, v: &PrValue, seconds: f64, format: Format) {
    match format {
        Format::Text => {
            let rel = match v.kind() {
                PrKind::Exact => "=",
                PrKind::UpperBound => "<=",
                PrKind::LowerBound => ">=",
            };
            println!("pr({name}) {rel} {}  [{} via {}, {seconds:.3}s]", v.value(), kind_name(v.kind()), v.provenance());
            if let Some(w) = v.witness() {
                println!("witness: {:?}", w.labels());
            }
        }
        Format::Json => {
            let out = ValueOut {
                graph: name,
                value: v.value(),
                kind: v.kind(),
                provenance: v.provenance(),
                witness: v.witness().map(|w| w.labels()),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("graph,value,kind,provenance,certified,seconds");
            println!(
                "{},{},{},{},{},{:.3}",
                csv_field(name),
                v.value(),
                kind_name(v.kind()),
                v.provenance(),
                v.kind() == PrKind::Exact,
                seconds
            );
        }
    }
}

fn kind_name(k: PrKind) -> &'static str {
    match k {
        PrKind::Exact => "exact",
        PrKind::UpperBound => "upper-bound",
        PrKind::LowerBound => "lower-bound",
    }
}

// ----------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifyOut {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    violations: Vec<coprime::Violation>,
}

fn cmd_verify(file: &std::path::Path, format: Format) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let doc: LabelingDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not a labeling document: {e}", file.display())))?;

    let outcome = match doc.resolve() {
        Ok((graph, labeling)) => match labeling.verify(&graph) {
            Ok(()) => VerifyOut { valid: true, error: None, violations: Vec::new() },
            Err(coprime::VerifyFailure::Violations(vs)) => {
                VerifyOut { valid: false, error: None, violations: vs }
            }
            Err(e) => VerifyOut { valid: false, error: Some(e.to_string()), violations: Vec::new() },
        },
        Err(e) => VerifyOut { valid: false, error: Some(e.to_string()), violations: Vec::new() },
    };

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&outcome).unwrap()),
        Format::Text | Format::Csv => {
            if outcome.valid {
                println!("valid: {} labels, max {}, graph {}", doc.labels.len(), doc.max, doc.graph);
            } else {
                if let Some(e) = &outcome.error {
                    println!("invalid: {e}");
                } else {
                    println!("invalid: {} violation(s)", outcome.violations.len());
                }
                for v in &outcome.violations {
                    println!("  - {v}");
                }
            }
        }
    }
    if outcome.valid {
        Ok(())
    } else {
        Err(Failure::Certification(format!("{} does not verify", file.display())))
    }
}

// ----------------------------------------------------------------- bounds

#[derive(Serialize)]
struct BoundsOut {
    graph: String,
    vertices: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    independence_lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime_multiple_lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime_multiple_note: Option<String>,
    complete_upper: u64,
}

fn cmd_bounds(graph_arg: &str, format: Format, primes: &Primes) -> Result<(), Failure> {
    let resolved = resolve_graph_arg(graph_arg)?;
    let g = &resolved.graph;
    let n = g.n();
    if n == 0 {
        return Err(Failure::Usage("bounds need a non-empty graph".into()));
    }

    // Exact alpha drives both lower bounds; past the solver's vertex cap we
    // skip them rather than report something unverified.
    let alpha = if n <= coprime::solver::MAX_VERTICES {
        Some(g.independence_number().map_err(|e| Failure::Certification(e.to_string()))?)
    } else {
        None
    };
    let (indep, pm_lower, pm_note) = match alpha {
        Some(a) => {
            let indep = coprime::lower_bound_independence(g, a);
            let (pm_lower, pm_note) =
                match coprime::lower_bound_prime_multiples(g, a, primes)
                    .map_err(|e| Failure::Certification(e.to_string()))?
                {
                    BoundReport::Available(v) => (Some(v.value()), None),
                    BoundReport::NotApplicable { reason } => (None, Some(reason)),
                };
            (Some(indep.value()), pm_lower, pm_note)
        }
        None => (None, None, Some(format!("graph too large for exact alpha (> {} vertices)", coprime::solver::MAX_VERTICES))),
    };

    let pr_complete = match pr_formula(&FamilyExpr::Complete(n), primes).map_err(construction_failure)? {
        FormulaOutcome::Covered(v) => v,
        FormulaOutcome::NotCovered { reason } => {
            return Err(Failure::Certification(format!("complete-graph value uncovered: {reason}")))
        }
    };
    let upper = monotonicity_bound(g, &Graph::complete(n), &pr_complete)
        .map_err(|e| Failure::Certification(e.to_string()))?;

    let out = BoundsOut {
        graph: resolved.name.clone(),
        vertices: n,
        edges: g.edge_count(),
        alpha,
        independence_lower: indep,
        prime_multiple_lower: pm_lower,
        prime_multiple_note: pm_note,
        complete_upper: upper.value(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
        Format::Csv => {
            println!("graph,vertices,edges,alpha,independence_lower,prime_multiple_lower,complete_upper");
            println!(
                "{},{},{},{},{},{},{}",
                csv_field(&out.graph),
                out.vertices,
                out.edges,
                opt(out.alpha),
                opt(out.independence_lower),
                opt(out.prime_multiple_lower),
                out.complete_upper
            );
        }
        Format::Text => {
            println!("graph: {} ({} vertices, {} edges)", out.graph, out.vertices, out.edges);
            if let Some(a) = out.alpha {
                println!("alpha = {a}");
            }
            if let Some(v) = out.independence_lower {
                println!("pr >= {v}  [independence bound]");
            }
            match (out.prime_multiple_lower, &out.prime_multiple_note) {
                (Some(v), _) => println!("pr >= {v}  [prime-multiple bound]"),
                (None, Some(note)) => println!("prime-multiple bound not applicable: {note}"),
                (None, None) => {}
            }
            println!("pr <= {}  [monotonicity against the complete graph]", out.complete_upper);
        }
    }
    Ok(())
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

// ------------------------------------------------------------------ table

fn experiment_failure(e: ExperimentError) -> Failure {
    match e {
        ExperimentError::Precondition(m) => Failure::Usage(m),
        other => Failure::Certification(other.to_string()),
    }
}

fn cmd_table(which: TableCommand, format: Format, primes: &Primes) -> Result<(), Failure> {
    match which {
        TableCommand::Corona { n_max, m_max } => {
            let rows = corona_table(n_max, m_max, primes).map_err(experiment_failure)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Csv => {
                    println!("family,m,n,pr,provenance,certified,seconds");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{:.3}",
                            csv_field(&r.family()),
                            r.m,
                            r.n,
                            r.value,
                            r.provenance,
                            r.certified,
                            r.seconds
                        );
                    }
                }
                Format::Text => {
                    let header = ["family", "m", "n", "pr", "prime", "provenance"];
                    let body: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.family(),
                                r.m.to_string(),
                                r.n.to_string(),
                                r.value.to_string(),
                                if r.prime { "yes" } else { "no" }.to_string(),
                                r.provenance.to_string(),
                            ]
                        })
                        .collect();
                    print!("{}", render_table(&header, &body));
                }
            }
        }
        TableCommand::Pathjoin { n_min, n_max, m_min, m_max, exact_max_vertices } => {
            let cfg = SweepConfig { exact_max_vertices };
            let rows =
                path_join_sweep(n_min..=n_max, m_min..=m_max, &cfg, primes).map_err(experiment_failure)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Csv => {
                    println!("family,m,n,pr,provenance,certified,seconds");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{:.3}",
                            csv_field(&r.family()),
                            r.m,
                            r.n,
                            opt(r.value),
                            opt(r.provenance.map(|p| p.to_string())),
                            r.certified,
                            r.seconds
                        );
                    }
                }
                Format::Text => {
                    let header = ["family", "m", "n", "lower", "pr", "flag", "provenance"];
                    let body: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.family(),
                                r.m.to_string(),
                                r.n.to_string(),
                                r.lower_bound.to_string(),
                                r.value.map(|v| v.to_string()).unwrap_or_else(|| "?".into()),
                                if r.flagged { "ABOVE-LOWER" } else { "" }.to_string(),
                                opt(r.provenance.map(|p| p.to_string())),
                            ]
                        })
                        .collect();
                    print!("{}", render_table(&header, &body));
                }
            }
        }
        TableCommand::Threshold { n_max, m_max } => {
            let table = corona_threshold_table(n_max, m_max, primes).map_err(experiment_failure)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
                Format::Csv => {
                    println!("m,max_prime_n,contiguous");
                    for r in &table.rows {
                        println!("{},{},{}", r.m, r.max_prime_n, r.contiguous);
                    }
                }
                Format::Text => {
                    println!("largest n (n <= {}) with corona(K(n),E(m)) prime:", table.n_max);
                    let header = ["m", "max prime n", "contiguous"];
                    let body: Vec<Vec<String>> = table
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.m.to_string(),
                                r.max_prime_n.to_string(),
                                r.contiguous.to_string(),
                            ]
                        })
                        .collect();
                    print!("{}", render_table(&header, &body));
                }
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ mod11

#[derive(Serialize)]
struct Mod11Out {
    x_max: u64,
    failures: Vec<u64>,
}

fn cmd_mod11(x_max: u64, format: Format, primes: &Primes) -> Result<(), Failure> {
    if x_max == 0 {
        return Err(Failure::Usage("--x-max must be >= 1".into()));
    }
    let failures =
        primes.verify_mod11_range(x_max).map_err(|e| Failure::Certification(e.to_string()))?;
    let out = Mod11Out { x_max, failures };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
        Format::Csv => {
            println!("x_max,failure_count,failures");
            println!(
                "{},{},{}",
                out.x_max,
                out.failures.len(),
                csv_field(&out.failures.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            );
        }
        Format::Text => {
            if out.failures.is_empty() {
                println!(
                    "every x in 1..={} has a prime p in (x, 2x] with p mod 11 not in {{1, 10}}",
                    out.x_max
                );
            } else {
                println!("failures: {:?}", out.failures);
            }
        }
    }
    if out.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Certification(format!("{} value(s) lack a witness", out.failures.len())))
    }
}

// ----------------------------------------------------------------- random

fn cmd_random(args: RandomArgs, format: Format, primes: &Primes) -> Result<(), Failure> {
    let cfg = SearchConfig {
        parallel_width: args.threads.or_else(env_threads).unwrap_or(1),
        ..SearchConfig::default()
    };
    let report = random_pr_experiment(args.n, args.p, args.trials, args.seed, &cfg, primes)
        .map_err(experiment_failure)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Csv => {
            println!(
                "trial,seed,vertices,edges,alpha,omega,independence_lower,prime_multiple_lower,pr,provenance,certified,upper_bound,prime,seconds"
            );
            for r in &report.rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
                    r.trial,
                    r.seed,
                    r.vertices,
                    r.edges,
                    r.alpha,
                    r.omega,
                    r.independence_lower,
                    opt(r.prime_multiple_lower),
                    r.pr,
                    r.provenance,
                    r.certified,
                    r.upper_bound,
                    r.prime,
                    r.seconds
                );
            }
        }
        Format::Text => {
            println!(
                "G(n = {}, p = {}): {} trials from seed {}",
                report.n, report.p, report.trials, report.seed
            );
            for r in &report.rows {
                println!(
                    "trial {:>2} (seed {}): {} edges, alpha {}, omega {}, pr = {} in [{}, {}], prime: {}, {:.3}s",
                    r.trial,
                    r.seed,
                    r.edges,
                    r.alpha,
                    r.omega,
                    r.pr,
                    r.independence_lower,
                    r.upper_bound,
                    if r.prime { "yes" } else { "no" },
                    r.seconds
                );
            }
            let a = &report.aggregates;
            println!(
                "not prime in {:.0}% of trials; pr range [{}, {}]; mean pr / (n ln n) = {:.3}",
                100.0 * a.fraction_not_prime,
                a.min_pr,
                a.max_pr,
                a.mean_pr_over_n_log_n
            );
        }
    }
    Ok(())
}

// ------------------------------------------------------------- formatting

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: Vec<&str>| {
        for (i, cell) in cells.iter().enumerate() {
            let sep = if i + 1 == cols { "\n" } else { "  " };
            let _ = write!(out, "{cell:<width$}{sep}", width = widths[i]);
        }
    };
    emit(header.to_vec());
    for row in rows {
        emit(row.iter().map(|s| s.as_str()).collect());
    }
    out
}
