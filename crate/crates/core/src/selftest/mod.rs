//! Seeded verification suites with independent oracles.
//!
//! The nine suites here back the CLI `selftest` command; the CLI-level
//! conformance suite (fixtures, exit codes, byte-stable output) lives with
//! the CLI crate's tests. Detail strings carry no timing data: for a fixed
//! seed the summary is byte-stable, while durations are reported
//! separately.

pub mod criteria;
pub mod oracles;
pub mod samplers;

use std::time::{Duration, Instant};

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub duration: Duration,
}

pub const CRITERION_NAMES: [&str; 9] = [
    "classification-table",
    "etube-exactness",
    "inclusion-chain",
    "certificate-soundness",
    "jost-equivalence",
    "lorentz-invariance",
    "hornsat-truth-tables",
    "containment-projection",
    "statistics-signs",
];

/// Runs one suite by 1-based id.
pub fn run_criterion(id: usize, seed: u64, quick: bool) -> CriterionReport {
    let start = Instant::now();
    let (passed, detail) = match id {
        1 => criteria::classification_table(seed, quick),
        2 => criteria::etube_exactness(seed, quick),
        3 => criteria::inclusion_chain(seed, quick),
        4 => criteria::certificate_soundness(seed, quick),
        5 => criteria::jost_equivalence(seed, quick),
        6 => criteria::lorentz_invariance(seed, quick),
        7 => criteria::hornsat_truth_tables(seed, quick),
        8 => criteria::containment_projection(seed, quick),
        9 => criteria::statistics_signs(seed, quick),
        other => panic!("no criterion {other}"),
    };
    CriterionReport {
        id,
        name: CRITERION_NAMES[id - 1],
        passed,
        detail,
        duration: start.elapsed(),
    }
}

/// Runs every suite in order.
pub fn run_all(seed: u64, quick: bool) -> Vec<CriterionReport> {
    (1..=9).map(|id| run_criterion(id, seed, quick)).collect()
}
