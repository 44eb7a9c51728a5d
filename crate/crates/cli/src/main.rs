mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use oppsym::{
    parse_cnf_to_graph, parse_graph, run_comparison, search_observed, ColoredGraph, Conflict,
    Heuristic, LeafKind, Mode, Permutation, SearchConfig, SearchError, SearchObserver, Trace,
    DEFAULT_MAX_NODES,
};

use report::JsonReport;

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RunMode {
    Enhanced,
    Baseline,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeuristicArg {
    First,
    Largest,
    SmallestNonsingleton,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::First => Heuristic::First,
            HeuristicArg::Largest => Heuristic::Largest,
            HeuristicArg::SmallestNonsingleton => Heuristic::SmallestNonsingleton,
        }
    }
}

/// Computes generators of the automorphism group of a vertex-colored graph.
#[derive(Debug, Parser)]
#[command(name = "opp-symmetry", version)]
struct Cli {
    /// Input file; reads stdin when omitted or `-`.
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "enhanced")]
    mode: RunMode,

    #[arg(long, value_enum, default_value = "first")]
    heuristic: HeuristicArg,

    /// Read a DIMACS CNF formula instead of a graph.
    #[arg(long)]
    cnf: bool,

    /// Emit a single JSON object instead of text.
    #[arg(long)]
    json: bool,

    /// Log decisions, refinement steps and conflicts to stderr.
    #[arg(long)]
    trace: bool,

    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,

    #[arg(long, value_name = "N")]
    timeout_ms: Option<u64>,
}

struct StderrTrace<W: Write> {
    out: W,
}

impl<W: Write> SearchObserver for StderrTrace<W> {
    fn decision(&mut self, level: u32, target: u32, image: u32) {
        let _ = writeln!(self.out, "[{level}] map {target} -> {image}");
    }

    fn top_refined(&mut self, level: u32, target: u32, trace: &Trace) {
        if target == u32::MAX {
            let _ = writeln!(self.out, "[{level}] refine root");
        } else {
            let _ = writeln!(self.out, "[{level}] refine after individualizing {target}");
        }
        for line in trace.render() {
            let _ = writeln!(self.out, "[{level}]   {line}");
        }
    }

    fn conflict(&mut self, level: u32, conflict: Conflict) {
        let _ = writeln!(self.out, "[{level}] {conflict}");
    }

    fn leaf(&mut self, level: u32, kind: LeafKind, alpha: &Permutation, accepted: bool) {
        let kind = match kind {
            LeafKind::Discrete => "discrete",
            LeafKind::Matching => "matching",
        };
        let verdict = if accepted { "automorphism" } else { "rejected" };
        let _ = writeln!(self.out, "[{level}] {kind} leaf {alpha} {verdict}");
    }
}

fn read_input(path: Option<&PathBuf>) -> io::Result<Vec<u8>> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read(p),
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn load(cli: &Cli) -> Result<ColoredGraph, String> {
    let name = cli
        .input
        .as_ref()
        .map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string());
    let bytes = read_input(cli.input.as_ref()).map_err(|e| format!("{name}: {e}"))?;
    let parsed = if cli.cnf {
        parse_cnf_to_graph(&bytes)
    } else {
        parse_graph(&bytes)
    };
    parsed.map_err(|e| format!("{name}: {e}"))
}

fn theorem_violation(e: SearchError) -> ExitCode {
    eprintln!("opp-symmetry: internal error: {e}");
    ExitCode::from(EXIT_INTERNAL)
}

fn run(cli: Cli) -> ExitCode {
    let g = match load(&cli) {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("opp-symmetry: {msg}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let heuristic = Heuristic::from(cli.heuristic);
    let mut config = SearchConfig {
        heuristic,
        max_nodes: cli.max_nodes,
        timeout: cli.timeout_ms.map(Duration::from_millis),
        ..SearchConfig::default()
    };

    let (text, json, complete) = match cli.mode {
        RunMode::Compare => {
            if cli.trace {
                eprintln!("opp-symmetry: --trace is ignored in compare mode");
            }
            let report = match run_comparison(&g, &config) {
                Ok(r) => r,
                Err(e) => return theorem_violation(e),
            };
            (
                report::text_comparison(&report),
                JsonReport::comparison(&g, heuristic, &report),
                report.comparable,
            )
        }
        RunMode::Enhanced | RunMode::Baseline => {
            config.mode = if cli.mode == RunMode::Baseline {
                Mode::Baseline
            } else {
                Mode::Enhanced
            };
            let result = if cli.trace {
                let mut obs = StderrTrace {
                    out: io::stderr().lock(),
                };
                search_observed(&g, &config, &mut obs)
            } else {
                search_observed(&g, &config, &mut ())
            };
            let result = match result {
                Ok(r) => r,
                Err(e) => return theorem_violation(e),
            };
            (
                report::text_single(&result),
                JsonReport::single(&g, config.mode, heuristic, &result),
                result.stats.complete,
            )
        }
    };

    let mut stdout = io::stdout().lock();
    let written = if cli.json {
        serde_json::to_writer(&mut stdout, &json)
            .map_err(io::Error::from)
            .and_then(|()| writeln!(stdout))
    } else {
        stdout.write_all(text.as_bytes())
    };
    if let Err(e) = written.and_then(|()| stdout.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("opp-symmetry: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    if complete {
        ExitCode::SUCCESS
    } else {
        eprintln!("opp-symmetry: budget exhausted, results are partial");
        ExitCode::from(EXIT_BUDGET)
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
