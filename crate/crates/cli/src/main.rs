//! `embedlab` command-line front end.

mod commands;
mod failure;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use embedlab::embeddings::STRICTNESS_TOLERANCE;
use embedlab::optimize::OptimizerConfig;
use embedlab::suites::DEFAULT_SEED;

use commands::{AttackSide, Report};
use failure::Failure;
use output::{csv_text, round_json, RunManifest, Sink, TOOL_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(name = "embedlab", version, about = "Leakage of quantum embeddings of two-party primitives")]
struct Cli {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format; defaults to csv for table1 and text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of stdout (a directory for export).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the run manifest as JSON to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct OptimizerFlags {
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 1e-9)]
    ftol: f64,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
}

impl OptimizerFlags {
    fn config(&self, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            ftol: self.ftol,
            max_iters: self.max_iters,
            seed,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entropies, triviality, components and leakage of one regular embedding.
    Analyze {
        /// Primitive id (`rot/1`, `primitive://ot/1`, ...) or JSON file.
        input: String,
        /// Phases, comma separated: one per support pair or one per free coordinate.
        #[arg(long, allow_hyphen_values = true)]
        phases: Option<String>,
        /// Strict-correctness tolerance.
        #[arg(long, default_value_t = STRICTNESS_TOLERANCE)]
        tol: f64,
    },
    /// Minimizes leakage over phases with a multi-start simplex search.
    Minimize {
        input: String,
        #[command(flatten)]
        opt: OptimizerFlags,
    },
    /// Leakage lower-bound table with closed-form and numeric values.
    Table1 {
        #[arg(long, default_value_t = 8)]
        max_r: u32,
        #[command(flatten)]
        opt: OptimizerFlags,
    },
    /// Runs the XOR and choice-bit POVM attacks on the canonical embedding.
    Attack {
        #[arg(default_value = "ot/1")]
        input: String,
        #[arg(long, value_enum, default_value_t = AttackSide::Both)]
        side: AttackSide,
    },
    /// Runs a randomized property suite.
    Check {
        /// symmetry, markov, holevo, monotone, reduction or all.
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Writes catalog distributions as JSON.
    Export {
        /// Primitive ids; the whole catalog when omitted.
        ids: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Analyze { .. } => "analyze",
            Self::Minimize { .. } => "minimize",
            Self::Table1 { .. } => "table1",
            Self::Attack { .. } => "attack",
            Self::Check { .. } => "check",
            Self::Export { .. } => "export",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Self::Table1 { .. } => Format::Csv,
            _ => Format::Text,
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Analyze { input, phases, tol } => commands::analyze(input, phases.as_deref(), *tol),
        Command::Minimize { input, opt } => commands::minimize(input, &opt.config(cli.seed)),
        Command::Table1 { max_r, opt } => commands::table1(*max_r, &opt.config(cli.seed)),
        Command::Attack { input, side } => commands::attack(input, *side),
        Command::Check { suite } => commands::check(suite, cli.seed),
        Command::Export { ids } => commands::export(ids, cli.out.as_deref()),
    }
}

fn run(cli: &Cli, arguments: Vec<String>) -> Result<(), Failure> {
    let start = Instant::now();
    let report = execute(cli)?;
    let manifest = RunManifest {
        command: cli.command.name().into(),
        arguments,
        seed: cli.seed,
        tool_version: TOOL_VERSION.into(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        results: round_json(report.results),
    };
    let manifest_json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    if let Some(path) = &cli.manifest {
        std::fs::write(path, &manifest_json).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    }
    let format = cli.format.unwrap_or(cli.command.default_format());
    let text = match format {
        Format::Json => manifest_json,
        Format::Csv => csv_text(&report.csv_header, &report.csv_rows)?,
        Format::Text => report.text,
    };
    // Export writes its files into --out itself.
    let out = match cli.command {
        Command::Export { .. } => None,
        _ => cli.out.clone(),
    };
    Sink { out }.emit(&text)?;
    log::info!("{} finished in {:?}", cli.command.name(), start.elapsed());
    match report.failed {
        Some(msg) => Err(Failure::Property(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(&cli, arguments) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("embedlab: {}", f.message());
            f.code()
        }
    }
}
