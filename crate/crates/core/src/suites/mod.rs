//! Seeded randomized property suites.
//!
//! Every suite draws its cases from a ChaCha stream derived from the master
//! seed, so a given seed always produces the same report.

pub mod gen;
mod holevo;
mod markov;
mod monotone;
mod reduction;
mod symmetry;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::optimize::restart_seed;
use crate::{Error, Result};

pub use holevo::holevo_suite;
pub use markov::markov_suite;
pub use monotone::monotone_suite;
pub use reduction::reduction_suite;
pub use symmetry::symmetry_suite;

/// Default master seed.
pub const DEFAULT_SEED: u64 = 7;

/// Suite names accepted by [`run_suite`], in execution order for `all`.
pub const SUITES: [&str; 5] = ["symmetry", "markov", "holevo", "monotone", "reduction"];

/// Outcome of one property over all of its cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// Largest observed violation measure (0 when every case is exact).
    pub max_violation: f64,
    pub tolerance: f64,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(PropertyReport::ok)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Accumulates pass counts and the worst violation for one property.
pub(crate) struct Tally {
    name: &'static str,
    tolerance: f64,
    passed: usize,
    total: usize,
    max_violation: f64,
}

impl Tally {
    pub(crate) fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            passed: 0,
            total: 0,
            max_violation: 0.0,
        }
    }

    /// Records a case whose violation measure must stay below the tolerance.
    pub(crate) fn check(&mut self, violation: f64) {
        self.record(violation < self.tolerance, violation);
    }

    pub(crate) fn record(&mut self, ok: bool, violation: f64) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
        if violation.is_nan() {
            self.max_violation = f64::NAN;
        } else {
            self.max_violation = self.max_violation.max(violation);
        }
    }

    pub(crate) fn finish(self) -> PropertyReport {
        PropertyReport {
            name: self.name.to_string(),
            passed: self.passed,
            total: self.total,
            max_violation: self.max_violation,
            tolerance: self.tolerance,
        }
    }
}

pub(crate) fn suite_rng(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(restart_seed(seed, 1000 + tag))
}

/// Runs one suite by name.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "symmetry" => symmetry_suite(seed),
        "markov" => markov_suite(seed),
        "holevo" => holevo_suite(seed),
        "monotone" => monotone_suite(seed),
        "reduction" => reduction_suite(seed),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Runs every suite in [`SUITES`] order.
pub fn run_all(seed: u64) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, seed)).collect()
}
