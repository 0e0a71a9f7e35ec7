//! Command-line front end: `gen`, `solve`, `verify`, `oracle`, `bench`.

mod bench;
mod report;

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::graph::{
    gen_random_bounded, gen_random_regular, gen_structured, read_graph, read_labeling, read_orientation, write_graph,
    write_labeling, write_orientation, EdgeType, Structured, TypeAssignment, TypedMultiGraph,
};
use crate::orient::{derive_params, lll_orient};
use crate::pi::solve_pi_with_delta;
use crate::splitting::{balanced_split, exact_split, RoundMode};
use crate::subroutines::{balanced_orientation, sinkless_orientation, CostLedger};
use crate::verify::{
    brute_force_count, brute_force_labeling, brute_force_orientation, check_balanced_orientation, check_eq1,
    check_eq2, check_lemma31, check_pi, check_sinkless, check_types, check_unbalanced, LowerBoundThresholds,
    Predicate, Rounding, UnbalancedThresholds, Verdict,
};

pub use bench::{run_bench, BenchRow, Suite};
pub use report::{digest_hex, LedgerSummary, RunReport};

#[derive(Debug, Parser)]
#[command(name = "degsplit", version, about = "Degree splitting, Π(y) splittings and unbalanced orientations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Run a solver, then its checker.
    Solve(SolveArgs),
    /// Check a labeling or orientation against a property.
    Verify(VerifyArgs),
    /// Exhaustive search on a small graph.
    Oracle(OracleArgs),
    /// Ledger-derived step counts over seeded random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    Regular,
    Bounded,
    Path,
    Cycle,
    Complete,
    Star,
    Tree,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Types {
    C,
    O,
    Coin,
}

impl Types {
    fn assignment(self) -> TypeAssignment {
        match self {
            Types::C => TypeAssignment::AllC,
            Types::O => TypeAssignment::AllO,
            Types::Coin => TypeAssignment::Coin,
        }
    }

    fn edge_type(self) -> Result<EdgeType, String> {
        match self {
            Types::C => Ok(EdgeType::C),
            Types::O => Ok(EdgeType::O),
            Types::Coin => Err("structured graphs take --types c or --types o".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub delta: usize,
    /// Edge keep probability for `bounded`.
    #[arg(long, default_value_t = 0.8)]
    pub keep: f64,
    /// Depth for `tree`.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = Types::C)]
    pub types: Types,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Task {
    Split,
    Exact,
    Pi,
    Orient,
    Sinkless,
    Balanced,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Mode {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub task: Task,
    /// Graph JSON file.
    pub graph: PathBuf,
    /// Labeling/orientation output; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Where to write the run report; stderr when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Where to write the cost ledger as JSON lines.
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Target for `pi`.
    #[arg(long, default_value_t = 0)]
    pub y: usize,
    /// Degree bound for `pi`; the graph's maximum degree when absent.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Rounding for `exact`.
    #[arg(long, value_enum, default_value_t = Mode::Down)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0.3)]
    pub rho1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub rho2: f64,
    #[arg(long, default_value_t = 2.0)]
    pub slack: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_resample: u64,
    /// Skip the post-solve check.
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Property {
    Types,
    Eq1,
    Eq2,
    Lemma31,
    Pi,
    Sinkless,
    Balanced,
    Unbalanced,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub property: Property,
    /// Graph JSON file.
    pub graph: PathBuf,
    #[arg(long)]
    pub labeling: Option<PathBuf>,
    #[arg(long)]
    pub orientation: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Down)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub y: usize,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = 0.3)]
    pub rho1: f64,
    #[arg(long, default_value_t = 0.3)]
    pub rho2: f64,
    #[arg(long, default_value_t = 2.0)]
    pub slack: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum OraclePredicate {
    Eq1,
    Eq2Down,
    Eq2Up,
    Lemma31,
    Pi,
    /// Out at most `rho1 Δ - slack` or in at most `rho2 Δ - slack`.
    Orientation,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub predicate: OraclePredicate,
    pub graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub y: usize,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub rho1: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rho2: f64,
    /// Absolute amount subtracted from both orientation thresholds.
    #[arg(long, default_value_t = 0.0)]
    pub slack: f64,
    /// Also count all satisfying labelings.
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Suite::Split)]
    pub suite: Suite,
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "200")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "4,8,16")]
    pub deltas: Vec<usize>,
    /// Number of seeds per (size, Δ) cell, starting at --seed.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Usage or input problem; maps to exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn load_graph(path: &Path) -> CliResult<(TypedMultiGraph, Vec<u8>)> {
    let mut bytes = Vec::new();
    File::open(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?
        .read_to_end(&mut bytes)?;
    let g = read_graph(bytes.as_slice()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok((g, bytes))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => File::create(p)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| CliError(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match result {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

pub fn cmd_gen(a: &GenArgs) -> CliResult<i32> {
    let g = match a.kind {
        GenKind::Regular => gen_random_regular(a.n, a.delta, a.seed, a.types.assignment())?,
        GenKind::Bounded => gen_random_bounded(a.n, a.delta, a.keep, a.seed, a.types.assignment())?,
        kind => {
            let which = match kind {
                GenKind::Path => Structured::Path(a.n),
                GenKind::Cycle => Structured::Cycle(a.n),
                GenKind::Complete => Structured::Complete(a.n),
                GenKind::Star => Structured::Star(a.n),
                _ => Structured::FullTree {
                    delta: a.delta,
                    depth: a.depth,
                },
            };
            gen_structured(which, a.types.edge_type().map_err(CliError)?)?
        }
    };
    let mut buf = Vec::new();
    write_graph(&mut buf, &g)?;
    emit(&a.out, &buf)?;
    Ok(0)
}

enum Solved {
    Labeling(crate::graph::Labeling),
    Orientation(crate::graph::Orientation),
}

pub fn cmd_solve(a: &SolveArgs) -> CliResult<i32> {
    let (g, input) = load_graph(&a.graph)?;
    let start = Instant::now();
    let mut extra = serde_json::Map::new();
    let (solved, ledger): (Solved, CostLedger) = match a.task {
        Task::Split => {
            let (lab, l) = balanced_split(&g);
            (Solved::Labeling(lab), l)
        }
        Task::Exact => {
            let mode = if a.mode == Mode::Down { RoundMode::Down } else { RoundMode::Up };
            let (lab, l) = exact_split(&g, mode)?;
            (Solved::Labeling(lab), l)
        }
        Task::Pi => {
            let delta = a.delta.unwrap_or(g.max_degree());
            let (lab, l, plan) = solve_pi_with_delta(&g, delta, a.y)?;
            extra.insert("plan".into(), serde_json::to_value(&plan)?);
            (Solved::Labeling(lab), l)
        }
        Task::Orient => {
            let params = derive_params(a.rho1, a.rho2, a.slack, a.seed, a.max_resample)?;
            let outcome = lll_orient(&g, &params)?;
            extra.insert("resamples".into(), json!(outcome.resamples));
            extra.insert("violations_initial".into(), json!(outcome.violations_initial));
            extra.insert("params".into(), serde_json::to_value(&params)?);
            let mut l = CostLedger::new();
            if outcome.resamples > 0 {
                l.record("lll", crate::subroutines::Unit::LllResample, outcome.resamples, 1);
            }
            (Solved::Orientation(outcome.orientation), l)
        }
        Task::Sinkless => {
            let mut l = CostLedger::new();
            let o = sinkless_orientation(&g, &mut l);
            (Solved::Orientation(o), l)
        }
        Task::Balanced => {
            let mut l = CostLedger::new();
            let o = balanced_orientation(&g, &mut l);
            (Solved::Orientation(o), l)
        }
    };
    let wall = start.elapsed();

    let verdict: Option<Verdict> = if a.no_verify {
        None
    } else {
        Some(match (&solved, a.task) {
            (Solved::Labeling(lab), Task::Split) => check_types(&g, lab)?.merge(check_eq1(&g, lab)?),
            (Solved::Labeling(lab), Task::Exact) => {
                let r = if a.mode == Mode::Down { Rounding::Down } else { Rounding::Up };
                check_eq2(&g, lab, r)?
            }
            (Solved::Labeling(lab), Task::Pi) => check_pi(&g, a.delta.unwrap_or(g.max_degree()), a.y, lab)?.verdict,
            (Solved::Orientation(o), Task::Orient) => check_unbalanced(
                &g,
                o,
                UnbalancedThresholds {
                    rho1: a.rho1,
                    rho2: a.rho2,
                    slack: a.slack,
                },
            )?,
            (Solved::Orientation(o), Task::Sinkless) => check_sinkless(&g, o)?,
            (Solved::Orientation(o), _) => check_balanced_orientation(&g, o)?,
            (Solved::Labeling(_), _) => unreachable!("labeling tasks matched above"),
        })
    };

    let mut out = Vec::new();
    match &solved {
        Solved::Labeling(lab) => write_labeling(&mut out, lab)?,
        Solved::Orientation(o) => write_orientation(&mut out, o)?,
    }
    emit(&a.out, &out)?;
    if let Some(p) = &a.ledger {
        std::fs::write(p, ledger.to_jsonl()).map_err(|e| CliError(format!("{}: {e}", p.display())))?;
    }
    let report = RunReport::new(
        format!("solve {}", task_name(a.task)),
        &input,
        &out,
        a.seed,
        wall,
        &ledger,
        verdict.as_ref(),
        serde_json::Value::Object(extra),
    );
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &a.report {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError(format!("{}: {e}", p.display())))?,
        None => eprint!("{text}"),
    }
    if let Some(v) = &verdict {
        eprint!("{}", v.to_jsonl());
    }
    Ok(match verdict {
        Some(v) if !v.pass => 1,
        _ => 0,
    })
}

fn task_name(t: Task) -> &'static str {
    match t {
        Task::Split => "split",
        Task::Exact => "exact",
        Task::Pi => "pi",
        Task::Orient => "orient",
        Task::Sinkless => "sinkless",
        Task::Balanced => "balanced",
    }
}

fn open(path: &Option<PathBuf>, what: &str) -> CliResult<BufReader<File>> {
    let p = path.as_ref().ok_or_else(|| CliError(format!("--{what} is required for this property")))?;
    Ok(BufReader::new(File::open(p).map_err(|e| CliError(format!("{}: {e}", p.display())))?))
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let (g, _) = load_graph(&a.graph)?;
    let m = g.edge_count();
    let verdict = match a.property {
        Property::Types | Property::Eq1 | Property::Eq2 | Property::Lemma31 | Property::Pi => {
            let lab = read_labeling(open(&a.labeling, "labeling")?, m)?;
            match a.property {
                Property::Types => check_types(&g, &lab)?,
                Property::Eq1 => check_types(&g, &lab)?.merge(check_eq1(&g, &lab)?),
                Property::Eq2 => {
                    let r = if a.mode == Mode::Down { Rounding::Down } else { Rounding::Up };
                    check_eq2(&g, &lab, r)?
                }
                Property::Lemma31 => check_types(&g, &lab)?.merge(check_lemma31(&g, &lab)?),
                _ => {
                    let r = check_pi(&g, a.delta.unwrap_or(g.max_degree()), a.y, &lab)?;
                    eprintln!("{}", json!({ "surviving_x": r.surviving }));
                    r.verdict
                }
            }
        }
        Property::Sinkless | Property::Balanced | Property::Unbalanced => {
            let o = read_orientation(open(&a.orientation, "orientation")?, m)?;
            match a.property {
                Property::Sinkless => check_sinkless(&g, &o)?,
                Property::Balanced => check_balanced_orientation(&g, &o)?,
                _ => check_unbalanced(
                    &g,
                    &o,
                    UnbalancedThresholds {
                        rho1: a.rho1,
                        rho2: a.rho2,
                        slack: a.slack,
                    },
                )?,
            }
        }
    };
    print!("{}", verdict.to_jsonl());
    Ok(if verdict.pass { 0 } else { 1 })
}

pub fn cmd_oracle(a: &OracleArgs) -> CliResult<i32> {
    let (g, _) = load_graph(&a.graph)?;
    let result = if a.predicate == OraclePredicate::Orientation {
        let t = LowerBoundThresholds {
            rho1: a.rho1,
            rho2: a.rho2,
            slack: a.slack,
        };
        let w = brute_force_orientation(&g, t)?;
        let mut witness = Vec::new();
        if let Some(o) = &w {
            write_orientation(&mut witness, o)?;
        }
        json!({ "sat": w.is_some(), "witness": parse_witness(&witness)? })
    } else {
        let pred = match a.predicate {
            OraclePredicate::Eq1 => Predicate::Eq1,
            OraclePredicate::Eq2Down => Predicate::Eq2Down,
            OraclePredicate::Eq2Up => Predicate::Eq2Up,
            OraclePredicate::Lemma31 => Predicate::Lemma31,
            _ => Predicate::Pi {
                delta: a.delta.unwrap_or(g.max_degree()),
                y: a.y,
            },
        };
        let w = brute_force_labeling(&g, &pred)?;
        let mut witness = Vec::new();
        if let Some(l) = &w {
            write_labeling(&mut witness, l)?;
        }
        let mut r = json!({ "sat": w.is_some(), "witness": parse_witness(&witness)? });
        if a.count {
            r["count"] = json!(brute_force_count(&g, &pred)?);
        }
        r
    };
    println!("{result}");
    Ok(0)
}

fn parse_witness(bytes: &[u8]) -> CliResult<serde_json::Value> {
    if bytes.is_empty() {
        Ok(serde_json::Value::Null)
    } else {
        Ok(serde_json::from_slice(bytes)?)
    }
}

pub fn cmd_bench(a: &BenchArgs) -> CliResult<i32> {
    let seeds: Vec<u64> = (a.seed..a.seed + a.seeds).collect();
    let rows = run_bench(a.suite, &a.sizes, &a.deltas, &seeds)?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Text => print!("{}", bench::table(&rows)),
    }
    Ok(0)
}
