//! Command-line driver: ingestion, solving, goodness checks, family
//! generation, exhaustive theorem verification, and benchmarking.
//!
//! Exit status: 0 on success, 1 when a theorem check finds a violation,
//! 2 on any input or usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nearly_core::{
    alpha0_exact, alpha1_exact, alpha_k_oracle, alpha_k_oracle_unguarded, build_h_member,
    check_corpus, check_theorem, emit_graph6, generate, gnp, is_good_definitional,
    is_good_structural, parse_edge_list, parse_graph6, render_report, AlphaResult, FamilySpec,
    Graph, Recipe, TheoremId, TheoremReport, VerifyOpts,
};
use rayon::prelude::*;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "nearly",
    about = "Exact nearly-independence numbers, good-graph recognition, and exhaustive theorem verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute alpha_k for each input graph (optimized for k = 0 and 1).
    Alpha(AlphaArgs),
    /// Compute alpha_k by brute force over all subsets, regardless of k.
    Oracle(AlphaArgs),
    /// Run the good-graph recognizers on each input graph.
    Good(GoodArgs),
    /// Emit a named family member or recipe expression as graph6.
    Gen(GenArgs),
    /// Verify a theorem exhaustively over all labeled graphs, or over a corpus.
    Verify(VerifyArgs),
    /// Time the exact solvers on a seeded G(n, p) grid.
    Bench(BenchArgs),
}

#[derive(Args)]
struct AlphaArgs {
    /// Edge budget of the query.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Input file (graph6 lines or an edge list); stdin when omitted.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Solve a generated family member or recipe instead of reading input.
    #[arg(long)]
    family: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the brute-force order guard.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct GoodArgs {
    /// Include the join decomposition tree for members.
    #[arg(long)]
    decompose: bool,
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Check a generated family member or recipe instead of reading input.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Family spec like `path:7`, `broom:6,3`, `bip:2,3`, or a recipe
    /// expression like `join(bip(2,3),empty(2))`.
    spec: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id: T1, T2, T3 or T4.
    #[arg(long)]
    theorem: String,
    /// Order or inclusive order range, e.g. `6` or `2..7`.
    #[arg(long, default_value = "1..6")]
    n: String,
    /// Check the graphs of this graph6 file instead of enumerating.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Fraction of graphs spot-checked against the brute-force oracle.
    #[arg(long, default_value_t = 0.01)]
    spot_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Permit the order-8 universe (2^28 graphs).
    #[arg(long)]
    allow_n8: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_workers();
    match run(cli.command) {
        Ok(violations) => {
            if violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Worker count from NEARLY_INDEP_THREADS (default: all cores).
fn init_workers() {
    if let Ok(value) = std::env::var("NEARLY_INDEP_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Alpha(args) => {
            let report = run_alpha(&args, false)?;
            write_output(args.output.as_deref(), &render_report(&report))?;
            Ok(false)
        }
        Command::Oracle(args) => {
            let report = run_alpha(&args, true)?;
            write_output(args.output.as_deref(), &render_report(&report))?;
            Ok(false)
        }
        Command::Good(args) => {
            let report = run_good(&args)?;
            write_output(args.output.as_deref(), &render_report(&report))?;
            Ok(false)
        }
        Command::Gen(args) => {
            let g = build_spec(&args.spec)?;
            write_output(args.output.as_deref(), &format!("{}\n", emit_graph6(&g)))?;
            Ok(false)
        }
        Command::Verify(args) => {
            let (report, violations) = run_verify(&args)?;
            write_output(args.output.as_deref(), &render_report(&report))?;
            Ok(violations)
        }
        Command::Bench(args) => {
            let report = run_bench(&args);
            write_output(args.output.as_deref(), &render_report(&report))?;
            Ok(false)
        }
    }
}

// ---------------------------------------------------------------------------
// input handling
// ---------------------------------------------------------------------------

fn read_input(path: Option<&std::path::Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

/// graph6 bytes live in 63..=126, so any digit or space marks an edge list.
fn looks_like_graph6(text: &str) -> bool {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .all(|l| l.trim().bytes().all(|b| (63..=126).contains(&b)))
}

/// Exactly one input source: a family spec, a file, or stdin.
fn input_graphs(family: Option<&str>, path: Option<&std::path::Path>) -> Result<Vec<Graph>> {
    match family {
        Some(spec) => Ok(vec![build_spec(spec)?]),
        None => read_graphs(path),
    }
}

/// Input graphs: either one graph6 record per line, or a single edge list.
fn read_graphs(path: Option<&std::path::Path>) -> Result<Vec<Graph>> {
    let text = read_input(path)?;
    if text.trim().is_empty() {
        bail!("no input graphs");
    }
    if looks_like_graph6(&text) {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                parse_graph6(l.trim().as_bytes()).with_context(|| format!("input line {}", i + 1))
            })
            .collect()
    } else {
        Ok(vec![parse_edge_list(&text).context("edge list input")?])
    }
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn solve_one(g: &Graph, k: usize, brute_force: bool, force: bool) -> Result<AlphaResult> {
    if brute_force || k >= 2 {
        if force {
            if g.order() >= 64 {
                bail!("order {} too large for subset enumeration", g.order());
            }
            Ok(alpha_k_oracle_unguarded(g, k))
        } else {
            Ok(alpha_k_oracle(g, k)?)
        }
    } else if k == 0 {
        Ok(alpha0_exact(g))
    } else {
        Ok(alpha1_exact(g))
    }
}

fn run_alpha(args: &AlphaArgs, brute_force: bool) -> Result<serde_json::Value> {
    let graphs = input_graphs(args.family.as_deref(), args.input.as_deref())?;
    let records: Result<Vec<serde_json::Value>> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let started = Instant::now();
            let result = solve_one(g, args.k, brute_force, args.force)
                .with_context(|| format!("graph {index}"))?;
            let micros = started.elapsed().as_micros() as u64;
            let mut record = result.to_report();
            let obj = record.as_object_mut().expect("alpha records are objects");
            obj.insert("index".into(), index.into());
            obj.insert("graph6".into(), emit_graph6(g).into());
            obj.insert("n".into(), g.order().into());
            obj.insert("m".into(), g.size().into());
            obj.insert("micros".into(), micros.into());
            Ok(record)
        })
        .collect();
    Ok(serde_json::json!({
        "command": if brute_force { "oracle" } else { "alpha" },
        "k": args.k,
        "records": records?,
    }))
}

fn run_good(args: &GoodArgs) -> Result<serde_json::Value> {
    let graphs = input_graphs(args.family.as_deref(), args.input.as_deref())?;
    let records: Vec<serde_json::Value> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let started = Instant::now();
            let report = is_good_definitional(g);
            let decomposition = if args.decompose {
                is_good_structural(g).map(|d| d.to_report())
            } else {
                None
            };
            let micros = started.elapsed().as_micros() as u64;
            let mut record = report.to_report();
            let obj = record
                .as_object_mut()
                .expect("goodness records are objects");
            obj.insert("index".into(), index.into());
            obj.insert("graph6".into(), emit_graph6(g).into());
            obj.insert("n".into(), g.order().into());
            obj.insert("m".into(), g.size().into());
            obj.insert("micros".into(), micros.into());
            if args.decompose {
                obj.insert(
                    "decomposition".into(),
                    decomposition.unwrap_or(serde_json::Value::Null),
                );
            }
            record
        })
        .collect();
    Ok(serde_json::json!({"command": "good", "records": records}))
}

fn build_spec(spec: &str) -> Result<Graph> {
    if spec.contains('(') {
        let recipe = Recipe::parse(spec)?;
        Ok(build_h_member(&recipe)?)
    } else {
        let family: FamilySpec = spec.parse()?;
        Ok(generate(&family)?)
    }
}

fn parse_order_range(text: &str) -> Result<(usize, usize)> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().context("range start")?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .context("range end")?;
        if lo > hi {
            bail!("empty order range {text}");
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.parse().with_context(|| format!("order '{text}'"))?;
        Ok((n, n))
    }
}

fn run_verify(args: &VerifyArgs) -> Result<(serde_json::Value, bool)> {
    let theorem: TheoremId = args.theorem.parse().map_err(|e| anyhow!("{e}"))?;
    let opts = VerifyOpts {
        spot_rate: args.spot_rate,
        seed: args.seed,
        allow_order_8: args.allow_n8,
    };
    let reports: Vec<TheoremReport> = if let Some(path) = &args.input {
        let graphs = read_graphs(Some(path))?;
        vec![check_corpus(theorem, &graphs, &opts)?]
    } else {
        let (lo, hi) = parse_order_range(&args.n)?;
        let lo = lo.max(theorem.min_order());
        if lo > hi {
            bail!("order range ends below the theorem's minimum order {lo}");
        }
        (lo..=hi)
            .map(|n| check_theorem(theorem, n, &opts))
            .collect::<Result<_, _>>()?
    };
    let violations = reports.iter().any(|r| !r.passed());
    let doc = serde_json::json!({
        "command": "verify",
        "theorem": theorem.as_str(),
        "reports": reports.iter().map(|r| r.to_report()).collect::<Vec<_>>(),
    });
    Ok((doc, violations))
}

fn run_bench(args: &BenchArgs) -> serde_json::Value {
    let mut cells = Vec::new();
    for (i, &n) in [20usize, 30, 40].iter().enumerate() {
        for (j, &p) in [0.1f64, 0.2, 0.3].iter().enumerate() {
            let seed = args.seed.wrapping_add((i * 3 + j) as u64);
            let g = gnp(n, p, seed);
            let t0 = Instant::now();
            let a0 = alpha0_exact(&g);
            let alpha0_micros = t0.elapsed().as_micros() as u64;
            let t1 = Instant::now();
            let a1 = alpha1_exact(&g);
            let alpha1_micros = t1.elapsed().as_micros() as u64;
            cells.push(serde_json::json!({
                "n": n,
                "p": p,
                "seed": seed,
                "m": g.size(),
                "alpha0": a0.value,
                "alpha0_micros": alpha0_micros,
                "alpha1": a1.value,
                "alpha1_micros": alpha1_micros,
            }));
        }
    }
    serde_json::json!({"command": "bench", "grid": cells})
}
