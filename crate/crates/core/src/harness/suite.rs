use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use super::config::{config_hash, CODE_VERSION};
use super::criteria::{run_criterion, Criterion, CriterionResult, Shared};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Acceptance,
    Quick,
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acceptance" => Ok(SuiteName::Acceptance),
            "quick" => Ok(SuiteName::Quick),
            other => Err(Error::invalid(format!("unknown suite '{other}' (expected acceptance or quick)"))),
        }
    }
}

impl SuiteName {
    pub fn criteria(self) -> Vec<Criterion> {
        use Criterion::*;
        match self {
            SuiteName::Acceptance => vec![
                LinearExactness,
                MassConservation,
                TemporalOrder,
                OperatorOracle,
                ScalingSymmetry,
                Paralinearization,
                Quantization,
                ModifiedEnergy,
                DispersionIdentities,
                ResonanceConstant,
                DispersiveDecay,
                Scattering,
            ],
            SuiteName::Quick => vec![
                LinearExactness,
                MassConservation,
                OperatorOracle,
                ScalingSymmetry,
                Paralinearization,
                Quantization,
                ModifiedEnergy,
                DispersionIdentities,
                ResonanceConstant,
                SyntheticFit,
            ],
        }
    }

    /// Criteria rerun under both thread counts for the determinism check.
    fn replayed(self) -> Vec<Criterion> {
        use Criterion::*;
        match self {
            SuiteName::Acceptance => self.criteria(),
            SuiteName::Quick => vec![LinearExactness, OperatorOracle, Quantization, DispersionIdentities],
        }
    }
}

/// Thread counts compared by the determinism criterion.
pub const DETERMINISM_THREADS: [usize; 2] = [1, 8];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub code_version: &'static str,
    pub config_hash: String,
    pub threads: usize,
    pub passed: bool,
    pub results: Vec<CriterionResult>,
    pub elapsed_seconds: f64,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CriterionResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build a pool of {threads} threads: {e}")))
}

fn run_list(list: &[Criterion], threads: usize, on_result: &mut dyn FnMut(&CriterionResult)) -> Result<Vec<CriterionResult>> {
    let shared = Shared::default();
    let pool = pool(threads)?;
    Ok(list
        .iter()
        .map(|&c| {
            let r = pool.install(|| run_criterion(c, &shared));
            on_result(&r);
            r
        })
        .collect())
}

/// Payload bytes of a result, excluding its timing.
fn fingerprint(r: &CriterionResult) -> Vec<u8> {
    serde_json::to_vec(&json!({ "id": r.id, "passed": r.passed, "summary": r.summary, "payload": r.payload }))
        .expect("results serialise")
}

/// Runs every criterion of the suite on a pool of `threads` threads, calling
/// `on_result` as each one finishes, then reruns the replay set so that both
/// thread counts of the determinism check are covered and compares payloads.
pub fn run_suite(name: SuiteName, threads: usize, mut on_result: impl FnMut(&CriterionResult)) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut results = run_list(&name.criteria(), threads, &mut on_result)?;

    let det_start = Instant::now();
    let replay = name.replayed();
    let mut runs: Vec<(usize, Vec<CriterionResult>)> = Vec::new();
    if DETERMINISM_THREADS.contains(&threads) {
        let kept = results.iter().filter(|r| replay.iter().any(|c| c.id() == r.id)).cloned().collect();
        runs.push((threads, kept));
    }
    for &n in DETERMINISM_THREADS.iter().filter(|&&n| n != threads) {
        runs.push((n, run_list(&replay, n, &mut |_| {})?));
    }
    let (a, b) = (&runs[0], &runs[1]);
    let mismatched: Vec<u8> =
        a.1.iter().zip(&b.1).filter(|(x, y)| fingerprint(x) != fingerprint(y)).map(|(x, _)| x.id).collect();
    let determinism = CriterionResult {
        id: 13,
        name: "determinism",
        passed: mismatched.is_empty() && a.1.len() == b.1.len(),
        summary: if mismatched.is_empty() {
            format!("{} criterion payloads bit-identical with {} and {} threads", a.1.len(), a.0, b.0)
        } else {
            format!("payloads differ between {} and {} threads for criteria {mismatched:?}", a.0, b.0)
        },
        payload: json!({ "threads": [a.0, b.0], "compared": a.1.iter().map(|r| r.id).collect::<Vec<_>>(), "mismatched": mismatched }),
        elapsed_seconds: det_start.elapsed().as_secs_f64(),
    };
    on_result(&determinism);
    results.push(determinism);

    Ok(SuiteReport {
        suite: name,
        code_version: CODE_VERSION,
        config_hash: config_hash(&json!({ "suite": name, "criteria": results.iter().map(|r| r.id).collect::<Vec<_>>() })),
        threads,
        passed: results.iter().all(|r| r.passed),
        results,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}
