//! Command-line driver for the topogate library.
//!
//! Exit codes: 0 success, 2 validation error, 3 resource limit, 4 falsified
//! invariant or failed demo criterion.

mod config;
mod tasks;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use topogate::{Error, ErrorCategory};

use config::{override_seed, ExperimentConfig, Task};

const EXIT_VALIDATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_FALSIFIED: u8 = 4;

#[derive(Parser)]
#[command(name = "topogate", version, about = "Classify locally implemented logical gates of stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Morphism check, encoded gate and hierarchy level of a circuit.
    Classify(RunArgs),
    /// Clean a logical operator off a region.
    Clean(RunArgs),
    /// Correctability of a region, or the union check of two regions.
    RegionCheck(RunArgs),
    /// Simplicial partition of a 2D torus and its correctability.
    Partition(RunArgs),
    /// Brute-force code distance.
    Distance(RunArgs),
    /// Commutator `K = P V P† V†` or the nested commutator sequence.
    Commutator(RunArgs),
    /// Closure of a gate set inside a hierarchy level.
    Closure(RunArgs),
    /// Run the curated acceptance criteria and print a pass/fail table.
    Demo(DemoArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides every seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Print only the JSON report.
    #[arg(long)]
    json_only: bool,
}

#[derive(Args)]
struct DemoArgs {
    /// Run a single criterion by name.
    #[arg(long)]
    only: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json_only: bool,
}

/// An error on its way to an exit code, with a machine-readable category.
struct Failure {
    category: ErrorCategory,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { category: e.category(), message: e.to_string() }
    }
}

fn validation(message: String) -> Failure {
    Failure { category: ErrorCategory::Validation, message }
}

fn exit_code(category: ErrorCategory) -> u8 {
    match category {
        ErrorCategory::Validation => EXIT_VALIDATION,
        ErrorCategory::Resource => EXIT_RESOURCE,
        ErrorCategory::Falsified => EXIT_FALSIFIED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => run_task(Task::Classify, &a),
        Command::Clean(a) => run_task(Task::Clean, &a),
        Command::RegionCheck(a) => run_task(Task::RegionCheck, &a),
        Command::Partition(a) => run_task(Task::Partition, &a),
        Command::Distance(a) => run_task(Task::Distance, &a),
        Command::Commutator(a) => run_task(Task::Commutator, &a),
        Command::Closure(a) => run_task(Task::Closure, &a),
        Command::Demo(a) => run_demo(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let err = json!({ "error": { "category": f.category, "message": f.message } });
            eprintln!("{err}");
            ExitCode::from(exit_code(f.category))
        }
    }
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<(ExperimentConfig, Value), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| validation(format!("cannot read config {}: {e}", path.display())))?;
    let mut config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| validation(format!("invalid config: {e}")))?;
    if let Some(s) = seed {
        override_seed(&mut config, s);
    }
    // canonical form: re-serialised effective config with sorted keys
    let canonical = serde_json::to_value(&config).map_err(|e| validation(format!("invalid config: {e}")))?;
    Ok((config, canonical))
}

fn run_task(task: Task, args: &RunArgs) -> Result<u8, Failure> {
    let (config, canonical) = load_config(&args.config, args.seed)?;
    if config.task != task {
        return Err(validation(format!(
            "config task {:?} does not match subcommand {:?}",
            config.task.name(),
            task.name()
        )));
    }
    let outcome = tasks::run(&config)?;
    let hash = hex::encode(Sha256::digest(canonical.to_string().as_bytes()));
    let report = json!({
        "tool": "topogate",
        "version": env!("CARGO_PKG_VERSION"),
        "task": task.name(),
        "config_sha256": hash,
        "config": canonical,
        "falsified": outcome.falsified,
        "result": outcome.result,
    });
    emit(&report, args.out.as_deref(), args.json_only)?;
    Ok(if outcome.falsified { EXIT_FALSIFIED } else { 0 })
}

fn run_demo(args: &DemoArgs) -> Result<u8, Failure> {
    let seed = args.seed.unwrap_or(topogate::demo::DEFAULT_SEED);
    let outcomes = topogate::demo::run(args.only.as_deref(), seed)?;
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.key).collect();
    let report = json!({
        "tool": "topogate",
        "version": env!("CARGO_PKG_VERSION"),
        "task": "demo",
        "seed": seed,
        "criteria": outcomes,
        "failed": failed,
    });
    if let Some(path) = &args.out {
        write_report(&report, path)?;
    }
    if args.json_only {
        if args.out.is_none() {
            println!("{}", pretty(&report)?);
        }
    } else {
        for o in &outcomes {
            println!(
                "[{:>2}] {} {:<11} {:>7.2}s  {}",
                o.id,
                if o.passed { "PASS" } else { "FAIL" },
                o.key,
                o.seconds,
                o.detail
            );
        }
        println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    }
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("failing criteria: {}", failed.join(", "));
        Ok(EXIT_FALSIFIED)
    }
}

fn pretty(v: &Value) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::from(Error::Backend(e.to_string())))
}

fn write_report(report: &Value, path: &Path) -> Result<(), Failure> {
    let text = pretty(report)? + "\n";
    std::fs::write(path, text).map_err(|e| validation(format!("cannot write {}: {e}", path.display())))
}

/// Writes the report and prints the human summary derived from it.
fn emit(report: &Value, out: Option<&Path>, json_only: bool) -> Result<(), Failure> {
    if let Some(path) = out {
        write_report(report, path)?;
    } else {
        println!("{}", pretty(report)?);
    }
    if !json_only {
        for line in summary(report) {
            println!("{line}");
        }
    }
    Ok(())
}

/// One line per scalar field of the result, nested objects flattened with dots.
fn summary(report: &Value) -> Vec<String> {
    let mut lines = vec![format!(
        "{} (config {})",
        report["task"].as_str().unwrap_or("?"),
        &report["config_sha256"].as_str().unwrap_or("?")[..12]
    )];
    fn walk(prefix: &str, v: &Value, depth: usize, out: &mut Vec<String>) {
        match v {
            Value::Object(map) if depth < 2 => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, depth + 1, out);
                }
            }
            Value::Object(_) | Value::Array(_) => {}
            scalar => out.push(format!("  {prefix}: {scalar}")),
        }
    }
    walk("", &report["result"], 0, &mut lines);
    lines.push(format!("  falsified: {}", report["falsified"]));
    lines
}
