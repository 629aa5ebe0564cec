//! `maxcut`: validate, solve and benchmark drawn MAX-CUT instances.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use maxcut_core::bench::{run_bench, to_csv};
use maxcut_core::crossing::{first_bad_crossing, reduce_touches, ConfigError, CrossingId};
use maxcut_core::format::{format_weight, parse_instance, Instance};
use maxcut_core::graph::{Cut, Value, WeightedGraph};
use maxcut_core::mcr::{solve_via_realization, McrError};
use maxcut_core::oracle::{brute_force_maxcut, OracleError};
use maxcut_core::solver::{solve_with, CrossingStrategy, SolveError, SolveResult, SolveStats, SolverOptions};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_NOT_GOOD: u8 = 4;
const EXIT_TOO_LARGE: u8 = 5;

#[derive(Parser)]
#[command(name = "maxcut", version, about = "Exact MAX-CUT for graphs drawn with few crossings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the crossing configuration is realizable and good.
    Validate(FileArgs),
    /// Solve by branching on crossings.
    Solve {
        #[command(flatten)]
        file: FileArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve by enumerating all bipartitions.
    Oracle(FileArgs),
    /// Solve through the realization block of the file.
    McrSolve {
        #[command(flatten)]
        file: FileArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Time the generated gadget family and print CSV.
    Bench {
        /// Smallest crossing count.
        #[arg(long, default_value_t = 1)]
        from: usize,
        /// Largest crossing count.
        #[arg(long, default_value_t = 10)]
        to: usize,
        /// Side length of the planar grid core.
        #[arg(long, default_value_t = 12)]
        side: usize,
        /// Runs per crossing count; the median is reported.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct FileArgs {
    /// Instance file.
    path: PathBuf,
    /// Print a JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolverArgs {
    /// Worker threads for concurrent branches.
    #[arg(long, value_name = "T")]
    parallel: Option<usize>,
    /// `lowest`, `highest` or `priority:<id>,<id>,...`.
    #[arg(long, default_value = "lowest", value_parser = parse_strategy)]
    strategy: CrossingStrategy,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions { strategy: self.strategy.clone(), threads: self.parallel }
    }
}

fn parse_strategy(text: &str) -> Result<CrossingStrategy, String> {
    match text {
        "lowest" => Ok(CrossingStrategy::LowestId),
        "highest" => Ok(CrossingStrategy::HighestId),
        _ => {
            let ids = text.strip_prefix("priority:").ok_or_else(|| format!("unknown strategy `{text}`"))?;
            ids.split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse().map(CrossingId).map_err(|_| format!("bad crossing id `{s}`")))
                .collect::<Result<_, _>>()
                .map(CrossingStrategy::Priority)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure { code, message: message.to_string() }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(EXIT_PARSE, e)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Config(_) => EXIT_PARSE,
            SolveError::InfeasibleConfiguration => EXIT_INFEASIBLE,
            SolveError::NotGood(_) => EXIT_NOT_GOOD,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e)
    }
}

impl From<McrError> for Failure {
    fn from(e: McrError) -> Self {
        match e {
            McrError::Solve(s) => s.into(),
            McrError::Realization(_) => Failure::new(EXIT_PARSE, e),
            McrError::SplitEdgeCut(_) => Failure::new(EXIT_OTHER, e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(EXIT_TOO_LARGE, e)
    }
}

fn load(path: &PathBuf) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_OTHER, format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn ids(list: &[CrossingId]) -> Vec<usize> {
    list.iter().map(|c| c.0).collect()
}

fn joined(list: &[usize]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn ms(d: &Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn value_text(value: Value, scale: u32) -> String {
    match value {
        Value::Finite(w) => format_weight(w, scale),
        Value::NegInfinity => "-inf".into(),
    }
}

fn validate(args: &FileArgs) -> Result<(), Failure> {
    let inst = load(&args.path)?;
    inst.config.check(&inst.graph)?;
    let Some((reduced, _, removed)) = reduce_touches(&inst.graph, &inst.config)? else {
        if args.json {
            println!("{}", json!({ "feasible": false, "crossings": inst.config.len() }));
        } else {
            println!("feasible: no");
        }
        return Err(Failure::new(EXIT_INFEASIBLE, "crossing configuration is not realizable"));
    };
    let bad = first_bad_crossing(&inst.graph, &reduced);
    if args.json {
        let report = json!({
            "feasible": true,
            "crossings": inst.config.len(),
            "touches_removed": ids(&removed),
            "remaining": reduced.len(),
            "good": bad.is_none(),
            "bad_crossing": bad.map(|c| c.0),
        });
        println!("{report}");
    } else {
        println!("feasible: yes");
        println!("crossings: {}", inst.config.len());
        println!("touches removed: {}", joined(&ids(&removed)));
        println!("remaining crossings: {}", reduced.len());
        match bad {
            None => println!("good: yes"),
            Some(c) => println!("good: no (crossing {c})"),
        }
    }
    match bad {
        None => Ok(()),
        Some(c) => Err(SolveError::NotGood(c).into()),
    }
}

fn stats_json(stats: &SolveStats) -> Json {
    json!({
        "branches": stats.branches,
        "base_cases": stats.base_cases,
        "pruned": stats.pruned,
        "depth": stats.max_depth,
        "crossings": stats.crossings,
        "touches_removed": ids(&stats.touches_removed),
        "level_times_ms": stats.level_times.iter().map(ms).collect::<Vec<_>>(),
    })
}

fn report(graph: &WeightedGraph, result: &SolveResult, json: bool) {
    let scale = graph.scale();
    let value = value_text(result.value, scale);
    if json {
        let witness = result.witness.as_ref().map(|c| c.side.iter().map(|&b| u8::from(b)).collect::<Vec<_>>());
        let mut out = json!({ "value": value, "witness": witness });
        out["stats"] = stats_json(&result.stats);
        println!("{out}");
        return;
    }
    println!("value: {value}");
    if let Some(cut) = &result.witness {
        print_witness(graph, cut);
    }
    let s = &result.stats;
    if s.base_cases > 0 {
        println!("branches: {}", s.branches);
        println!("base cases: {}", s.base_cases);
        println!("pruned: {}", s.pruned);
        println!("depth: {}", s.max_depth);
        println!("touches removed: {}", joined(&ids(&s.touches_removed)));
        let times: Vec<String> = s.level_times.iter().map(|t| format!("{:.3}", ms(t))).collect();
        println!("level times (ms): {}", times.join(" "));
    }
}

fn print_witness(graph: &WeightedGraph, cut: &Cut) {
    println!("S: {}", joined(&cut.members()));
    println!("cut edges: {}", joined(&cut.cut_edges(graph)));
}

fn solve(file: &FileArgs, solver: &SolverArgs) -> Result<(), Failure> {
    let inst = load(&file.path)?;
    let result = solve_with(&inst.graph, &inst.config, &solver.options())?;
    report(&inst.graph, &result, file.json);
    Ok(())
}

fn oracle(file: &FileArgs) -> Result<(), Failure> {
    let inst = load(&file.path)?;
    let cut = brute_force_maxcut(&inst.graph)?;
    let result = SolveResult { value: Value::Finite(cut.value), witness: Some(cut), stats: SolveStats::default() };
    report(&inst.graph, &result, file.json);
    Ok(())
}

fn mcr_solve(file: &FileArgs, solver: &SolverArgs) -> Result<(), Failure> {
    let inst = load(&file.path)?;
    let drawing = inst.realization.ok_or_else(|| Failure::new(EXIT_PARSE, "instance has no realization block"))?;
    let result = solve_via_realization(&inst.graph, &drawing.realization, &drawing.config, &solver.options())?;
    report(&inst.graph, &result, file.json);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate(args) => validate(&args),
        Command::Solve { file, solver } => solve(&file, &solver),
        Command::Oracle(file) => oracle(&file),
        Command::McrSolve { file, solver } => mcr_solve(&file, &solver),
        Command::Bench { from, to, side, repeats, solver } => {
            if from > to {
                return Err(Failure::new(EXIT_OTHER, "--from exceeds --to"));
            }
            if to > side * side {
                return Err(Failure::new(EXIT_OTHER, "--to exceeds the number of grid nodes"));
            }
            let rows = run_bench(from..=to, side, repeats, &solver.options())?;
            print!("{}", to_csv(&rows));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_OTHER) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
