//! `pcs`: analyses, simulation, DOT export and Petri-net import from JSON.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pcs_core::dcs::{dominant_valuation, DcsError};
use pcs_core::io::{
    self, format_real, petri_from_json, system_from_json, valuation_from_json, IoError, TraceDoc,
    SCHEMA_VERSION,
};
use pcs_core::probability::{uniform_measure, MarkovChain, ProbabilityError, Valuation};
use pcs_core::system::{SystemError, DEFAULT_MAX_STATES};
use pcs_core::{dot, ConcurrentSystem, NumericPolicy};

#[derive(Parser)]
#[command(
    name = "pcs",
    version,
    about = "Probabilistic concurrent systems toolkit"
)]
struct Cli {
    /// Zero tolerance for approximate Möbius values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Graph {
    Coxeter,
    States,
    Cliques,
    Sc,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a system (or a monoid as a single-state system).
    Analyze {
        path: PathBuf,
        #[arg(long)]
        uniform: bool,
        #[arg(long)]
        dcs: bool,
        #[arg(long)]
        spectral: bool,
        /// Include growth matrices up to this length.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Sample the Markov chain of states-and-cliques.
    Simulate {
        path: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `uniform`, `dominant` or a valuation file.
        #[arg(long, default_value = "uniform")]
        valuation: String,
    },
    /// Render a graph in DOT.
    ExportDot {
        path: PathBuf,
        #[arg(long, value_enum)]
        graph: Graph,
        /// Draw null nodes of this valuation dashed (`uniform`, `dominant` or a file).
        #[arg(long)]
        mark_null: Option<String>,
    },
    /// Explore the markings of a 1-safe Petri net.
    Petri {
        path: PathBuf,
        /// Write the induced system here.
        #[arg(long)]
        to_system: Option<PathBuf>,
    },
}

/// A failed command: exit code, message and optional witness.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
    witness: Option<serde_json::Value>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            witness: None,
        }
    }
}

fn system_code(e: &SystemError) -> u8 {
    match e {
        SystemError::Incoherent { .. } | SystemError::TooManyStates(_) => 3,
        SystemError::UnsafeNet { .. } => 5,
        _ => 2,
    }
}

fn probability_code(e: &ProbabilityError) -> u8 {
    match e {
        ProbabilityError::System(s) => system_code(s),
        ProbabilityError::NotProbabilistic { .. } => 4,
        _ => 3,
    }
}

impl From<SystemError> for Failure {
    fn from(e: SystemError) -> Self {
        let mut f = Failure::new(system_code(&e), e.to_string());
        if let SystemError::Incoherent { state, a, b } = &e {
            f.witness = Some(json!({ "state": state, "a": a, "b": b }));
        }
        if let SystemError::UnsafeNet {
            marking,
            transition,
        } = &e
        {
            f.witness = Some(json!({ "marking": marking, "transition": transition }));
        }
        f
    }
}

impl From<ProbabilityError> for Failure {
    fn from(e: ProbabilityError) -> Self {
        match e {
            ProbabilityError::System(s) => s.into(),
            e => {
                let mut f = Failure::new(probability_code(&e), e.to_string());
                match &e {
                    ProbabilityError::NotProbabilistic {
                        state,
                        clique,
                        value,
                    } => {
                        f.witness =
                            Some(json!({ "state": state, "clique": clique, "value": value }));
                    }
                    ProbabilityError::Incoherent { state, a, b } => {
                        f.witness = Some(json!({ "state": state, "a": a, "b": b }));
                    }
                    _ => {}
                }
                f
            }
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::System(s) => s.into(),
            IoError::Probability(p) => p.into(),
            e => Failure::new(2, e.to_string()),
        }
    }
}

impl From<DcsError> for Failure {
    fn from(e: DcsError) -> Self {
        match e {
            DcsError::System(s) => s.into(),
            DcsError::Probability(p) => p.into(),
            e => Failure::new(3, e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<ConcurrentSystem, Failure> {
    Ok(system_from_json(&read(path)?)?)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

/// Resolves `uniform`, `dominant` or a valuation file, then checks it is
/// probabilistic.
fn pick_valuation<'s>(
    s: &'s ConcurrentSystem,
    which: &str,
    policy: &NumericPolicy,
) -> Result<Valuation<'s>, Failure> {
    let v = match which {
        "uniform" => uniform_measure(s, policy)?.into_valuation(),
        "dominant" => dominant_valuation(s),
        file => valuation_from_json(&read(Path::new(file))?, s, policy)?,
    };
    let verdict = v.verdict(policy);
    if let Some(w) = verdict.witnesses.first() {
        let mut f = Failure::new(4, "valuation is not probabilistic");
        f.witness = Some(json!({
            "state": s.state_name(w.state),
            "clique": s.monoid().clique_name(w.clique),
            "value": format_real(&w.value),
        }));
        return Err(f);
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let policy = cli
        .tol
        .map_or_else(NumericPolicy::default, NumericPolicy::with_tol);
    let Format::Json = cli.format;
    match cli.command {
        Command::Analyze {
            path,
            uniform,
            dcs,
            spectral,
            order,
        } => {
            let s = load_system(&path)?;
            let flags = report::Flags {
                uniform,
                dcs,
                spectral,
                order,
            };
            print_json(&report::analyze(&s, &flags, &policy)?);
        }
        Command::Simulate {
            path,
            state,
            steps,
            seed,
            valuation,
        } => {
            let s = load_system(&path)?;
            let alpha = s.state(&state)?;
            let v = pick_valuation(&s, &valuation, &policy)?;
            let chain = MarkovChain::new(&v, &policy)?;
            let sample = chain.sample(alpha, steps, seed)?;
            let trace = sample
                .trace(&s)
                .map_err(|e| Failure::new(3, e.to_string()))?;
            let nodes: Vec<[String; 2]> = sample
                .nodes
                .iter()
                .map(|n| {
                    [
                        s.state_name(n.state).into(),
                        s.monoid().clique_name(n.clique),
                    ]
                })
                .collect();
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "state": state,
                "steps": steps,
                "seed": seed,
                "valuation": valuation,
                "nodes": nodes,
                "stopped_early": sample.stopped_early,
                "execution": TraceDoc::from_trace(s.monoid(), &trace).layers,
            }));
        }
        Command::ExportDot {
            path,
            graph,
            mark_null,
        } => {
            let s = load_system(&path)?;
            let text = match graph {
                Graph::Coxeter => dot::coxeter(s.monoid()),
                Graph::States => dot::states(&s),
                Graph::Cliques => dot::cliques(s.monoid()),
                Graph::Sc => {
                    let null = match &mark_null {
                        Some(which) => pick_valuation(&s, which, &policy)?.null_nodes(&policy),
                        None => Vec::new(),
                    };
                    dot::sc(&s, &null)
                }
            };
            print!("{text}");
        }
        Command::Petri { path, to_system } => {
            let net = petri_from_json(&read(&path)?)?;
            let s = net.to_system(DEFAULT_MAX_STATES)?;
            let markings = net.markings(DEFAULT_MAX_STATES)?;
            if let Some(out) = &to_system {
                std::fs::write(out, io::system_to_json(&s) + "\n")
                    .map_err(|e| Failure::new(2, format!("{}: {e}", out.display())))?;
            }
            let m = s.monoid();
            let independence: Vec<[&str; 2]> = m
                .independence_pairs()
                .into_iter()
                .map(|(a, b)| [m.name(a), m.name(b)])
                .collect();
            let states: Vec<serde_json::Value> = s
                .state_names()
                .iter()
                .zip(&markings)
                .map(|(n, mk)| json!({ "state": n, "marking": mk }))
                .collect();
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "marking_count": markings.len(),
                "markings": states,
                "independence": independence,
            }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "error": f.message,
                "exit_code": f.code,
                "witness": f.witness,
            }));
            ExitCode::from(f.code)
        }
    }
}
