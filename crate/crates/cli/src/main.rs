//! `sqgfront`: run configured experiments and the acceptance suites.
//!
//! Exit status: 0 on success, 1 for configuration and usage errors, 2 for
//! numerical failures and failed suite criteria.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use sqg_front::harness::{run_config, run_suite, ExperimentConfig, SuiteName};
use sqg_front::Error;

#[derive(Parser, Debug)]
#[command(name = "sqgfront", version, about = "SQG front simulator and diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory (overrides the config's `output`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Replace every seed in the config.
    #[arg(long, global = true)]
    seed_override: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run { config: PathBuf },
    /// Run a named suite: `acceptance` or `quick`.
    Suite { name: String },
}

const CONFIG_ERROR: u8 = 1;
const NUMERICAL_FAILURE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { CONFIG_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(CONFIG_ERROR);
    }
    let result = match &cli.command {
        Command::Run { config } => run(config, &cli, threads),
        Command::Suite { name } => suite(name, &cli, threads),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let numerical = e.downcast_ref::<Error>().is_some_and(Error::is_numerical);
            ExitCode::from(if numerical { NUMERICAL_FAILURE } else { CONFIG_ERROR })
        }
    }
}

fn run(path: &Path, cli: &Cli, threads: usize) -> anyhow::Result<u8> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(seed) = cli.seed_override {
        cfg.override_seed(seed);
    }
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(cfg.experiment.name()));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let report = pool.install(|| run_config(&cfg, &out))?;
    println!("{} finished in {:.1} s; report in {}", report.kind, report.elapsed_seconds, out.join("report.json").display());
    println!("{}", serde_json::to_string_pretty(&report.payload)?);
    Ok(0)
}

fn suite(name: &str, cli: &Cli, threads: usize) -> anyhow::Result<u8> {
    let name: SuiteName = name.parse()?;
    let report = run_suite(name, threads, |r| println!("{}", r.line()))?;
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    let file = out.join(format!("suite_{}.json", serde_json::to_value(name)?.as_str().unwrap_or("suite")));
    std::fs::write(&file, serde_json::to_vec_pretty(&report)?)?;
    let failed = report.failures().count();
    println!(
        "{} of {} criteria passed in {:.1} s; report in {}",
        report.results.len() - failed,
        report.results.len(),
        report.elapsed_seconds,
        file.display()
    );
    Ok(if failed == 0 { 0 } else { NUMERICAL_FAILURE })
}
