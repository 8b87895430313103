use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use monopoly_core::checks::{self, Bundle, DEFAULT_SEED};
use monopoly_core::constructions::{self, Family};
use monopoly_core::engine::{activate, is_static_monopoly, VertexSet};
use monopoly_core::graph::{self, Graph};
use monopoly_core::io;
use monopoly_core::solver::{min_dynamo_lb_pruned, min_monopoly_lb_pruned, Budget};
use monopoly_core::{bounds, Error, ThresholdAssignment};

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "monopoly", version, about = "Threshold monopolies and dynamos on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family
    Gen(GenArgs),
    /// Cartesian product of two graph files
    Product(ProductArgs),
    /// Build an explicit monopoly or dynamo
    Construct(ConstructArgs),
    /// Check a vertex set against a graph and thresholds
    Verify(VerifyArgs),
    /// Show the activation layers of a seed set
    Trace(TraceArgs),
    /// Find a minimum monopoly or dynamo by exhaustive search
    Solve(SolveArgs),
    /// Evaluate a closed-form bound
    Bound(BoundArgs),
    /// Run named check bundles
    CheckTheorem(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    EdgeList,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Cycle,
    Complete,
    Star,
    CompleteBipartite,
    Random,
    Line,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; json keeps grid labels
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
    /// Write here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: GenFamily,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Extra edge probability for `random`
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Host graph for `line`
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ProductArgs {
    /// First factor; its vertices index the rows
    left: PathBuf,
    /// Second factor; its vertices index the columns
    right: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Append the ASCII grid after the JSON
    #[arg(long)]
    grid: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Majority {
    Simple,
    Strict,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ThresholdSource {
    /// Thresholds JSON file
    #[arg(long)]
    thresholds: Option<PathBuf>,
    /// Constant threshold
    #[arg(long)]
    threshold: Option<u32>,
    #[arg(long, value_enum)]
    majority: Option<Majority>,
}

#[derive(Args)]
struct Instance {
    /// Edge-list or graph JSON file, `-` for stdin
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    tau: ThresholdSource,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Monopoly,
    Dynamo,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: Instance,
    /// VertexSet JSON file
    #[arg(long)]
    set: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long)]
    set: PathBuf,
    /// Append per-round grid snapshots after the JSON
    #[arg(long)]
    grid: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Give up after this many candidate sets
    #[arg(long)]
    max_candidates: Option<u64>,
    /// Give up after this many seconds
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Start the search at this size; must not exceed the optimum
    #[arg(long, default_value_t = 0)]
    lower_bound: usize,
}

#[derive(Args)]
struct BoundArgs {
    /// Bound name; see --list
    #[arg(long, required_unless_present = "list")]
    name: Option<String>,
    /// Parameters as key=value, comma or space separated
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    params: Vec<String>,
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Bundle names, or `all`
    #[arg(required = true)]
    bundles: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print the reports as JSON
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Status(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: monopoly_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_graph(g: &Graph, out: &OutputArgs, default: GraphFormat) -> Outcome {
    let text = match out.format.unwrap_or(default) {
        GraphFormat::EdgeList => io::write_edge_list(g),
        GraphFormat::Json => io::graph_to_json(g),
    };
    emit(&text, out.output.as_deref())
}

fn load_instance(inst: &Instance) -> Result<(Graph, ThresholdAssignment), Failure> {
    let g = with_path(&inst.graph, io::read_graph(&read_text(&inst.graph)?))?;
    let src = &inst.tau;
    let tau = if let Some(path) = &src.thresholds {
        with_path(path, io::thresholds_from_json(&read_text(path)?, &g))?
    } else if let Some(t) = src.threshold {
        ThresholdAssignment::constant(&g, t)?
    } else {
        match src.majority {
            Some(Majority::Simple) => ThresholdAssignment::simple_majority(&g)?,
            Some(Majority::Strict) => ThresholdAssignment::strict_majority(&g)?,
            None => return Err(usage("no threshold source given")),
        }
    };
    Ok((g, tau))
}

fn load_set(path: &Path) -> Result<VertexSet, Failure> {
    with_path(path, io::vertex_set_from_json(&read_text(path)?))
}

fn need(value: Option<usize>, name: &str, what: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("{what} needs --{name}")))
}

fn gen(a: &GenArgs) -> Outcome {
    let g = match a.family {
        GenFamily::Cycle => graph::cycle(need(a.n, "n", "cycle")?)?,
        GenFamily::Complete => graph::complete(need(a.n, "n", "complete")?)?,
        GenFamily::Star => graph::star(need(a.n, "n", "star")?)?,
        GenFamily::CompleteBipartite => {
            graph::complete_bipartite(need(a.m, "m", "complete-bipartite")?, need(a.n, "n", "complete-bipartite")?)?
        }
        GenFamily::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            graph::random_connected(need(a.n, "n", "random")?, a.p, &mut rng)?
        }
        GenFamily::Line => {
            let path = a.input.as_deref().ok_or_else(|| usage("line needs --input"))?;
            let host = with_path(path, io::read_graph(&read_text(path)?))?;
            graph::line_graph(&host)?
        }
    };
    emit_graph(&g, &a.out, GraphFormat::EdgeList)
}

fn product(a: &ProductArgs) -> Outcome {
    let left = with_path(&a.left, io::read_graph(&read_text(&a.left)?))?;
    let right = with_path(&a.right, io::read_graph(&read_text(&a.right)?))?;
    emit_graph(&graph::cartesian_product(&left, &right)?, &a.out, GraphFormat::Json)
}

fn construct(a: &ConstructArgs) -> Outcome {
    let family: Family = a.family.parse()?;
    let mut args = Vec::new();
    for &name in family.params() {
        let value = match name {
            "m" => a.m,
            "n" => a.n,
            "t" => a.t,
            _ => a.k,
        };
        args.push(need(value, name, family.tag())?);
    }
    let c = constructions::build(family, &args)?;
    let mut text = io::construction_to_json(&c);
    if a.grid {
        text.push_str("\n\n");
        text.push_str(&io::render_grid(&c.graph, &c.set)?);
    }
    emit(&text, a.output.as_deref())
}

fn verify(a: &VerifyArgs) -> Outcome {
    let (g, tau) = load_instance(&a.instance)?;
    let set = load_set(&a.set)?;
    let (holds, witness, kind) = match a.kind {
        Kind::Monopoly => {
            let check = is_static_monopoly(&g, &tau, &set)?;
            (check.holds, check.witness, "monopoly")
        }
        Kind::Dynamo => {
            let trace = activate(&g, &tau, &set)?;
            let first_missed = (0..g.vertex_count()).find(|&v| !trace.activated.contains(v));
            (trace.complete, first_missed, "dynamo")
        }
    };
    let report = serde_json::json!({
        "format": "monopoly.verify/1",
        "kind": kind,
        "holds": holds,
        "size": set.len(),
        "witness": witness,
    });
    emit(&serde_json::to_string_pretty(&report).expect("json"), None)?;
    if holds {
        Ok(())
    } else {
        Err(Failure::Status(VERIFY_FAILED))
    }
}

fn trace(a: &TraceArgs) -> Outcome {
    let (g, tau) = load_instance(&a.instance)?;
    let set = load_set(&a.set)?;
    let t = activate(&g, &tau, &set)?;
    let mut text = io::trace_to_json(&t);
    if a.grid {
        text.push_str("\n\n");
        text.push_str(&io::render_trace(&g, &t)?);
    }
    emit(&text, None)
}

fn solve(a: &SolveArgs) -> Outcome {
    let (g, tau) = load_instance(&a.instance)?;
    let max_time = match a.max_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(usage("--max-seconds must be a non-negative number")),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let budget = Budget {
        max_candidates: a.max_candidates,
        max_time,
        threads: a.threads.max(1),
    };
    let result = match a.kind {
        Kind::Monopoly => min_monopoly_lb_pruned(&g, &tau, a.lower_bound, budget)?,
        Kind::Dynamo => min_dynamo_lb_pruned(&g, &tau, a.lower_bound, budget)?,
    };
    emit(&io::solve_to_json(&result), None)?;
    if result.is_solved() {
        Ok(())
    } else {
        Err(Failure::Status(INCONCLUSIVE))
    }
}

fn bound(a: &BoundArgs) -> Outcome {
    if a.list {
        for (name, params) in bounds::BOUNDS {
            println!("{name} {}", params.join(" "));
        }
        return Ok(());
    }
    let name = a.name.as_deref().ok_or_else(|| usage("--name is required"))?;
    let mut params = BTreeMap::new();
    for item in a.params.iter().flat_map(|p| p.split_whitespace()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter {item:?} is not key=value")))?;
        let value: usize = value
            .parse()
            .map_err(|_| usage(format!("parameter {key} needs a non-negative integer, got {value:?}")))?;
        params.insert(key.to_string(), value);
    }
    let report = bounds::evaluate(name, &params)?;
    emit(&io::bound_to_json(&report), None)
}

fn check_theorem(a: &CheckArgs) -> Outcome {
    let mut selected = Vec::new();
    for name in &a.bundles {
        if name == "all" {
            selected.extend(Bundle::ALL);
        } else {
            selected.push(name.parse::<Bundle>()?);
        }
    }
    let mut all_passed = true;
    let mut reports = Vec::new();
    for bundle in selected {
        let report = checks::run(bundle, a.seed)?;
        all_passed &= report.passed();
        if !a.json {
            for o in &report.outcomes {
                let mark = if o.passed { "PASS" } else { "FAIL" };
                println!("{mark} {bundle} {}: {}", o.instance, o.detail);
            }
            let failed = report.failures().count();
            println!(
                "{bundle}: {} of {} checks passed (seed {})",
                report.outcomes.len() - failed,
                report.outcomes.len(),
                a.seed
            );
        }
        reports.push(report);
    }
    if a.json {
        emit(&serde_json::to_string_pretty(&reports).expect("json"), None)?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Status(VERIFY_FAILED))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Product(a) => product(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Trace(a) => trace(a),
        Command::Solve(a) => solve(a),
        Command::Bound(a) => bound(a),
        Command::CheckTheorem(a) => check_theorem(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Status(code)) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
