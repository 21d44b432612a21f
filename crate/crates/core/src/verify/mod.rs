//! Exact verification of the geometric identities on Peter–Weyl blocks.
//!
//! A suite run builds blocks `0..=max_level`, computes the matrices of the
//! basic operators on each block and checks identities between them, either
//! exactly over `Q(i)(s)` or after specializing `s` to a rational value.

pub mod block;
pub mod cohomology;
mod geometry;
mod hopf;
pub mod linalg;

use std::sync::atomic::{AtomicBool, Ordering};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{calibration, Calibration};
use crate::error::{Error, Result};

pub use block::{build_block, Block, Sector};
pub use cohomology::{cohomology, CohomologyReport};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Suite {
    Hopf,
    Calculus,
    Metric,
    Hodge,
    Sl2,
    Kahler,
    All,
}

impl Suite {
    /// Every suite except `All`, in run order.
    pub const PARTS: [Suite; 6] = [Suite::Hopf, Suite::Calculus, Suite::Metric, Suite::Hodge, Suite::Sl2, Suite::Kahler];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Calculus => "calculus",
            Suite::Metric => "metric",
            Suite::Hodge => "hodge",
            Suite::Sl2 => "sl2",
            Suite::Kahler => "kahler",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}` (expected hopf, calculus, metric, hodge, sl2, kahler or all)")))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    Symbolic,
    /// Every check evaluated at `s = s0`.
    Numeric(BigRational),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_level: usize,
    pub mode: Mode,
    /// Largest entry complexity handled symbolically before a block falls
    /// back to sampling at [`sample_points`].
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_level: 4, mode: Mode::Symbolic, budget: 400 }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Points used when a symbolic block exceeds the budget.
pub fn sample_points() -> Vec<BigRational> {
    vec![ratio(1, 2), ratio(7, 10)]
}

/// Where positivity of the Gram matrices is tested.
pub fn positivity_point(mode: &Mode) -> BigRational {
    match mode {
        Mode::Symbolic => ratio(7, 10),
        Mode::Numeric(s0) => s0.clone(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub block: Option<usize>,
    pub sector: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, block: Option<usize>, sector: Option<Sector>, counterexample: Option<String>) -> Self {
        CheckResult {
            check: check.into(),
            block,
            sector: sector.map(|s| s.name().to_string()),
            status: if counterexample.is_none() { Status::Pass } else { Status::Fail },
            counterexample,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CalibrationSummary {
    pub convention: String,
    pub constants: Calibration,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub max_level: usize,
    pub mode: String,
    pub results: Vec<CheckResult>,
    pub calibration: CalibrationSummary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

pub fn calibration_summary() -> CalibrationSummary {
    let c = calibration();
    CalibrationSummary { convention: c.convention(), constants: c.clone() }
}

/// Runs a suite. Output order depends only on the inputs.
pub fn run(suite: Suite, opts: &Options) -> Report {
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    let fell_back = AtomicBool::new(false);
    let needs_blocks = parts.iter().any(|p| *p != Suite::Hopf);
    let contexts: Vec<geometry::BlockContext> = if needs_blocks {
        (0..=opts.max_level)
            .into_par_iter()
            .map(|n| geometry::BlockContext::new(build_block(n), opts, &fell_back))
            .collect()
    } else {
        Vec::new()
    };
    let mut results = Vec::new();
    for part in parts {
        match part {
            Suite::Hopf => results.extend(hopf::run(opts)),
            _ => {
                let per_block: Vec<Vec<CheckResult>> = contexts.par_iter().map(|c| c.run(part, opts)).collect();
                results.extend(per_block.into_iter().flatten());
            }
        }
    }
    let mode = match (&opts.mode, fell_back.load(Ordering::Relaxed)) {
        (Mode::Symbolic, false) => "symbolic",
        _ => "numeric",
    };
    Report {
        suite: suite.name().to_string(),
        max_level: opts.max_level,
        mode: mode.to_string(),
        results,
        calibration: calibration_summary(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::PARTS {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert!(Suite::parse("kähler").is_err());
    }

    #[test]
    fn check_status_follows_counterexample() {
        assert!(CheckResult::new("x", Some(0), None, None).passed());
        let r = CheckResult::new("x", None, Some(Sector::Omega2), Some("bad".into()));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.sector.as_deref(), Some("Omega2"));
    }
}
