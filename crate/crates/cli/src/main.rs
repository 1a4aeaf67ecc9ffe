//! `rigidlab` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification finds a mismatch, 2 on
//! bad input.

mod expr;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigidlab::classifier::{enumerate_kchains, kchain_gpr_predicate};
use rigidlab::construct::k_chain;
use rigidlab::verify::{
    verify_bolker_roth, verify_coning, verify_hendrickson, verify_theorem_main, DEFAULT_MAX_SWEEP_DIM,
};
use rigidlab::{analyze, AnalysisConfig, Error, Graph, PrimeField, RedundancyMethod, RigidityReport};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "rigidlab",
    version,
    about = "Generic rigidity of graphs over large prime fields"
)]
struct Cli {
    /// Base seed for all randomness.
    #[arg(long, global = true, env = "RIGIDLAB_SEED", default_value_t = 0)]
    seed: u64,

    /// Prime modulus of the field (default 2^61 - 1).
    #[arg(long, global = true)]
    modulus: Option<u64>,

    /// Independent random realizations per analysis.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the rigidity tests on one graph.
    Analyze(AnalyzeArgs),
    /// Build a graph from a constructor expression and print it.
    Construct {
        /// e.g. "attach(complete 6; left=0,1; right=2,3,4,5; interior=3,5)"
        expr: String,
    },
    /// List chains up to reversal as JSON lines.
    Enumerate(EnumerateArgs),
    /// Check a characterization against the engine.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(short = 'd', long = "dim")]
    dim: usize,

    /// Graph file in the `v n` / `e i j` line format, or JSON.
    #[arg(long, conflicts_with = "construct", required_unless_present = "construct")]
    file: Option<PathBuf>,

    /// Constructor expression instead of a file.
    #[arg(long)]
    construct: Option<String>,

    /// Also identify redundant edges by removing each one and retesting, and
    /// fail if the two methods disagree.
    #[arg(long)]
    cross_check: bool,

    /// Recheck every trial's rank bound, equilibrium and stress-matrix kernel.
    #[arg(long)]
    audit: bool,

    #[arg(long, default_value_t = 64)]
    max_vertices: usize,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(short = 'd', long = "dim")]
    dim: usize,

    /// Number of vertices (default C(d+2, 2)).
    #[arg(short = 'v', long = "vertices")]
    vertices: Option<usize>,

    /// Block counts: `K`, `A..B` or `A..` (default 4..).
    #[arg(short = 'k', long = "chain-lengths", value_parser = parse_range)]
    chain_lengths: Option<(usize, Option<usize>)>,

    #[arg(long, value_enum)]
    filter: Option<Filter>,

    /// Attach an experimental report to every emitted chain.
    #[arg(long)]
    analyze: bool,

    #[arg(long, default_value_t = 28)]
    max_vertices: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    /// Chains predicted to be generically partially rigid.
    Gpr,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,

    #[arg(short = 'd', long = "dim")]
    dim: usize,

    /// Random graphs per run (hendrickson, coning).
    #[arg(long, default_value_t = 50)]
    samples: usize,

    /// Largest sampled graph (hendrickson, coning).
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,

    /// Largest dimension the chain sweep will run.
    #[arg(long, default_value_t = DEFAULT_MAX_SWEEP_DIM)]
    max_dim: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    TheoremMain,
    BolkerRoth,
    Hendrickson,
    Coning,
}

fn parse_range(s: &str) -> Result<(usize, Option<usize>), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number {t:?} in {s:?}"))
    };
    match s.split_once("..") {
        None => num(s).map(|k| (k, Some(k))),
        Some((lo, "")) => Ok((num(lo)?, None)),
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok((lo, Some(hi)))
        }
    }
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn config(cli: &Cli) -> Result<AnalysisConfig, Failure> {
    let field = match cli.modulus {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default(),
    };
    if cli.trials == 0 {
        return Err(Failure::Input("--trials must be positive".into()));
    }
    Ok(AnalysisConfig {
        trials: cli.trials,
        seed: cli.seed,
        field,
        ..AnalysisConfig::default()
    })
}

fn check_dim(d: usize) -> Result<(), Failure> {
    if d == 0 {
        return Err(Failure::Input("dimension must be at least 1".into()));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn report_text(r: &RigidityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph: {} vertices, {} edges, d = {}", r.v, r.e, r.d);
    let _ = writeln!(s, "local rigidity:      {} (rank {})", r.glr.as_str(), r.rigidity_rank);
    let _ = writeln!(s, "redundant rigidity:  {}", r.grr.as_str());
    let _ = writeln!(
        s,
        "global rigidity:     {} (stress matrix nullity {})",
        r.ggr.as_str(),
        r.stress_matrix_nullity
    );
    let _ = writeln!(s, "partial rigidity:    {}", r.gpr.as_str());
    let _ = writeln!(s, "connectivity:        {}", r.connectivity);
    let _ = writeln!(s, "stress dimension:    {}", r.stress_dim);
    let edges: Vec<String> = r.non_redundant_edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
    let _ = writeln!(
        s,
        "non-redundant edges: {}",
        if edges.is_empty() {
            "none".into()
        } else {
            edges.join(" ")
        }
    );
    let _ = write!(s, "trials {}, seed {}, modulus {}", r.trials, r.seed, r.modulus);
    s
}

fn load_graph(args: &AnalyzeArgs) -> Result<Graph, Failure> {
    if let Some(src) = &args.construct {
        return expr::parse(src).map_err(|e| Failure::Input(format!("--construct: {e}")));
    }
    let path = args.file.as_ref().expect("clap requires --file or --construct");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        Graph::from_json(&text)
    } else {
        Graph::from_text(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<String, Failure> {
    check_dim(args.dim)?;
    let mut cfg = config(cli)?;
    cfg.audit = args.audit;
    if args.cross_check {
        cfg.redundancy = RedundancyMethod::CrossCheck;
    }
    let g = load_graph(args)?;
    if g.vertex_count() > args.max_vertices {
        return Err(Failure::Input(format!(
            "graph has {} vertices, above --max-vertices {}",
            g.vertex_count(),
            args.max_vertices
        )));
    }
    let report = analyze(&g, args.dim, &cfg)?;
    Ok(match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report_text(&report),
    })
}

fn cmd_construct(cli: &Cli, src: &str) -> Result<String, Failure> {
    let g = expr::parse(src).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(match cli.format {
        Format::Json => g.to_json(),
        Format::Text => g.to_text().trim_end().to_string(),
    })
}

fn cmd_enumerate(cli: &Cli, args: &EnumerateArgs) -> Result<String, Failure> {
    check_dim(args.dim)?;
    let cfg = config(cli)?;
    let v = args.vertices.unwrap_or((args.dim + 2) * (args.dim + 1) / 2);
    if v > args.max_vertices {
        return Err(Failure::Input(format!(
            "{v} vertices is above the enumeration budget --max-vertices {}",
            args.max_vertices
        )));
    }
    let (k_min, k_max) = args.chain_lengths.unwrap_or((4, None));
    let mut lines = Vec::new();
    for spec in enumerate_kchains(v, k_min, k_max.unwrap_or(v)) {
        let mut verdict = kchain_gpr_predicate(&spec, args.dim);
        if matches!(args.filter, Some(Filter::Gpr)) && !verdict.predicted_gpr {
            continue;
        }
        if args.analyze {
            verdict.experimental = Some(analyze(&k_chain(&spec), args.dim, &cfg)?);
        }
        lines.push(verdict.to_json());
    }
    Ok(lines.join("\n"))
}

fn summary_line(passed: bool, detail: String) -> String {
    format!("{}: {detail}", if passed { "pass" } else { "FAIL" })
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<(String, bool), Failure> {
    check_dim(args.dim)?;
    let cfg = config(cli)?;
    let d = args.dim;
    let (body, passed, text) = match args.target {
        Target::TheoremMain => {
            let r = verify_theorem_main(d, &cfg, args.max_dim)?;
            let mut t = summary_line(
                r.passed,
                format!(
                    "{} chains with k >= 4 on {} vertices, {} analyzed, {} GPR",
                    r.chains_checked,
                    r.vertex_count,
                    r.analyzed.len(),
                    r.predicted_gpr.len()
                ),
            );
            for s in &r.predicted_gpr {
                let _ = write!(t, "\n  gpr {s}");
            }
            for m in &r.mismatches {
                let seed = m.experimental.as_ref().map_or(cfg.seed, |x| x.seed);
                let _ = write!(
                    t,
                    "\n  mismatch {} predicted {} (replay seed {seed})",
                    m.spec, m.predicted_gpr
                );
            }
            (json(&r), r.passed, t)
        }
        Target::BolkerRoth => {
            let r = verify_bolker_roth(d, &cfg)?;
            let mut t = summary_line(
                r.passed,
                format!("{} bipartite graphs, modulus {}", r.cases.len(), r.modulus),
            );
            for c in &r.mismatches {
                let _ = write!(
                    t,
                    "\n  K({},{}) formula {} computed {} (seed {})",
                    c.a, c.b, c.formula, c.computed, c.seed
                );
            }
            (json(&r), r.passed, t)
        }
        Target::Hendrickson => {
            let r = verify_hendrickson(d, args.samples, args.max_vertices, &cfg)?;
            let mut t = summary_line(
                r.passed,
                format!("{} random graphs, {} globally rigid", r.samples, r.globally_rigid),
            );
            for c in &r.violations {
                let _ = write!(t, "\n  violation: {} (seed {})", json(&c.sample.graph), c.sample.seed);
            }
            (json(&r), r.passed, t)
        }
        Target::Coning => {
            let r = verify_coning(d, args.samples, args.max_vertices, &cfg)?;
            let mut t = summary_line(r.passed, format!("{} random graphs and their cones", r.samples));
            for c in &r.disagreements {
                let _ = write!(
                    t,
                    "\n  disagreement: {} (seed {})",
                    json(&c.sample.graph),
                    c.sample.seed
                );
            }
            (json(&r), r.passed, t)
        }
    };
    Ok((if cli.format == Format::Json { body } else { text }, passed))
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(cli, a).map(|s| (s, true)),
        Command::Construct { expr } => cmd_construct(cli, expr).map(|s| (s, true)),
        Command::Enumerate(a) => cmd_enumerate(cli, a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, passed)) => {
            if !out.is_empty() {
                println!("{out}");
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
