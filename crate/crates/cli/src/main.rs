use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use geodesic::constructions::{c4_based_metric, odd_cycle_metric, p5bar_minus_a_metric, path_based_metric};
use geodesic::io::{read_json, to_json, write_catalog};
use geodesic::obstacles::{assess_obstacle, ObstacleOutcome, Side};
use geodesic::recognizer::{decide_metric, decide_metric_naive, enumerate_minimal_nonmetric, DecideOptions};
use geodesic::replay::{run_replay, ReplayContext};
use geodesic::{betweenness_triples, hypergraph_of, line, line_partition, Error, Graph, Hypergraph3, MetricSpace};
use serde::Serialize;

const EXIT_METRIC: u8 = 0;
const EXIT_NONMETRIC: u8 = 10;
const EXIT_UNDETERMINED: u8 = 10;
const EXIT_INAPPLICABLE: u8 = 11;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "geodesic", version, about = "Metric hypergraphs and lines in finite metric spaces")]
struct Cli {
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betweenness, collinearity hypergraph and lines of a metric file.
    Analyze {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a hypergraph file is metric. Exit 0 metric, 10 not, 2 error.
    Decide {
        file: PathBuf,
        /// Enumerate every total orientation, no propagation or pruning.
        #[arg(long)]
        naive: bool,
        /// Skip the LP relaxation check at inner nodes.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, env = "GEODESIC_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Emit one of the explicit constructions as a metric file.
    Construct {
        name: Construction,
        /// Odd cycle parameter: the cycle has 2s+1 vertices.
        #[arg(long)]
        s: Option<usize>,
        /// Path length.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Try to certify that the line equivalence of a graph file is an obstacle.
    /// Exit 0 certified, 10 undetermined, 11 inapplicable, 2 error.
    Obstacle {
        file: PathBuf,
        #[arg(long, env = "GEODESIC_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Write a catalog of minimal non-metric hypergraphs on n vertices.
    Enumerate {
        n: usize,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 600)]
        budget: u64,
        #[arg(long, short, default_value = "catalog")]
        out: PathBuf,
        #[arg(long, env = "GEODESIC_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Replay the claim manifest. Exit 0 if every claim passes, 1 otherwise.
    #[command(alias = "verify-paper")]
    Replay {
        /// Run only the claim with this id.
        #[arg(long)]
        claim: Option<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "GEODESIC_THREADS", default_value_t = 1)]
        threads: usize,
        /// Replace the 4-cycle chart (harness self-test).
        #[arg(long, hide = true)]
        c4_chart: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    OddCycle,
    Path,
    C4,
    P5barMinusA,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn emit<T: Serialize>(value: &T, compact: bool) -> Result<()> {
    println!("{}", to_json(value, !compact)?);
    Ok(())
}

fn options(threads: usize, prune: bool) -> DecideOptions {
    DecideOptions { threads: threads.max(1), prune_every: prune.then_some(1), ..Default::default() }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze { file, json } => analyze(file, *json, cli.compact),
        Command::Decide { file, naive, no_prune, threads } => {
            let h: Hypergraph3 = read_json(file)?;
            let v = if *naive { decide_metric_naive(&h)? } else { decide_metric(&h, &options(*threads, !no_prune))? };
            emit(&v, cli.compact)?;
            Ok(if v.is_metric() { EXIT_METRIC } else { EXIT_NONMETRIC })
        }
        Command::Construct { name, s, k, out } => {
            let need = |v: &Option<usize>, flag: &str| v.with_context(|| format!("this construction needs --{flag}"));
            let m = match name {
                Construction::OddCycle => odd_cycle_metric(need(s, "s")?)?,
                Construction::Path => path_based_metric(need(k, "k")?)?,
                Construction::C4 => c4_based_metric()?,
                Construction::P5barMinusA => p5bar_minus_a_metric()?,
            };
            match out {
                Some(p) => geodesic::io::write_json(p, &m, !cli.compact)?,
                None => emit(&m, cli.compact)?,
            }
            Ok(0)
        }
        Command::Obstacle { file, threads } => {
            let g: Graph = read_json(file)?;
            match assess_obstacle(&g, &options(*threads, true)) {
                Ok(ObstacleOutcome::Certified { certificate }) => {
                    emit(&certificate, cli.compact)?;
                    Ok(0)
                }
                Ok(ObstacleOutcome::Undetermined { metric_side, .. }) => {
                    let which = match metric_side {
                        Side::Graph => "based(G)",
                        Side::Complement => "based(complement of G)",
                    };
                    println!("undetermined ({which} is metric)");
                    Ok(EXIT_UNDETERMINED)
                }
                Err(Error::RouteInapplicable(why)) => {
                    println!("inapplicable ({why})");
                    Ok(EXIT_INAPPLICABLE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Enumerate { n, budget, out, threads } => {
            let e = enumerate_minimal_nonmetric(*n, Duration::from_secs(*budget), &options(*threads, true))?;
            let index = write_catalog(out, &e)?;
            eprintln!(
                "{} classes, {} examined, {} minimal non-metric{}; catalog in {}",
                e.classes,
                e.examined,
                index.entries.len(),
                if e.truncated { " (truncated by budget)" } else { "" },
                out.display()
            );
            Ok(0)
        }
        Command::Replay { claim, list, json, threads, c4_chart } => replay(claim.as_deref(), *list, *json, *threads, c4_chart.as_deref(), cli.compact),
    }
}

#[derive(Serialize)]
struct Analysis {
    points: Vec<String>,
    betweenness: Vec<String>,
    hypergraph: Vec<[String; 3]>,
    lines: Vec<LineEntry>,
    line_classes: Vec<Vec<[String; 2]>>,
}

#[derive(Serialize)]
struct LineEntry {
    pair: [String; 2],
    line: Vec<String>,
}

fn analyze(file: &Path, json: bool, compact: bool) -> Result<u8> {
    let m: MetricSpace = read_json(file)?;
    let pts = m.points().to_vec();
    let name = |i: usize| pts[i].clone();
    let betweenness: Vec<String> = betweenness_triples(&m).iter().map(|b| b.to_string()).collect();
    let hypergraph: Vec<[String; 3]> = hypergraph_of(&m).triples().iter().map(|t| t.map(name)).collect();
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = line(&m, &pts[i], &pts[j])?;
            lines.push(LineEntry { pair: [name(i), name(j)], line: l.into_iter().collect() });
        }
    }
    let line_classes = if pts.len() >= 2 {
        line_partition(&m, &pts)?.classes().iter().map(|c| c.iter().map(|p| p.map(name)).collect()).collect()
    } else {
        Vec::new()
    };
    let a = Analysis { points: pts.clone(), betweenness, hypergraph, lines, line_classes };
    if json {
        emit(&a, compact)?;
        return Ok(0);
    }
    println!("points: {}", a.points.join(" "));
    println!("betweenness ({}): {}", a.betweenness.len(), a.betweenness.join(" "));
    let triples: Vec<String> = a.hypergraph.iter().map(|t| format!("{{{}}}", t.join(","))).collect();
    println!("hypergraph ({}): {}", triples.len(), triples.join(" "));
    println!("lines:");
    for l in &a.lines {
        println!("  L({},{}) = {{{}}}", l.pair[0], l.pair[1], l.line.join(","));
    }
    println!("line classes ({}):", a.line_classes.len());
    for c in &a.line_classes {
        let pairs: Vec<String> = c.iter().map(|p| format!("{}{}", p[0], p[1])).collect();
        println!("  {}", pairs.join(" "));
    }
    Ok(0)
}

fn replay(claim: Option<&str>, list: bool, json: bool, threads: usize, chart: Option<&Path>, compact: bool) -> Result<u8> {
    if list {
        for c in geodesic::replay::manifest() {
            println!("{:<26} {}  {}", c.id, c.criterion, c.statement);
        }
        return Ok(0);
    }
    let mut ctx = ReplayContext::default();
    ctx.opts.threads = threads.max(1);
    if let Some(p) = chart {
        ctx = ctx.with_c4_chart(read_json(p)?);
    }
    let report = run_replay(&ctx, claim)?;
    if json {
        emit(&report, compact)?;
    } else {
        for r in &report.results {
            println!("{} {:<26} {:>7}ms  {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.elapsed_ms, r.detail);
        }
        let failed = report.results.iter().filter(|r| !r.pass).count();
        println!("{} claims, {failed} failed", report.results.len());
    }
    Ok(if report.passed() { 0 } else { 1 })
}
