//! Multi-start minimization of leakage over gauge-fixed phase coordinates.

mod simplex;

use std::f64::consts::{FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::{entanglement_entropy, fold_angle, free_phase_coordinates, FreePhases, PhaseAssignment};
use crate::probdist::{mutual_information, JointDistribution};
use crate::quantum::{CMatrix, C64};
use crate::{Error, Result};

pub use simplex::{nelder_mead, SimplexOutcome};

/// Largest number of free coordinates accepted by [`minimize_leakage`].
pub const MAX_COORDINATES: usize = 64;
/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "EMBEDLAB_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub ftol: f64,
    pub seed: u64,
    pub simplex_scale: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 2000,
            ftol: 1e-9,
            seed: 7,
            simplex_scale: FRAC_PI_4,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "restarts",
                value: 0.0,
                reason: "at least one restart is needed",
            });
        }
        if self.ftol.is_nan() || self.ftol <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "ftol",
                value: self.ftol,
                reason: "ftol must be positive",
            });
        }
        if self.simplex_scale.is_nan() || self.simplex_scale <= 0.0 {
            return Err(Error::ParameterOutOfRange {
                name: "simplex_scale",
                value: self.simplex_scale,
                reason: "simplex scale must be positive",
            });
        }
        Ok(())
    }
}

/// One restart: where it began and where it ended.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub index: usize,
    pub start: Vec<f64>,
    pub final_coords: Vec<f64>,
    pub final_delta: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerResult {
    pub best_phases: PhaseAssignment,
    pub best_coords: Vec<f64>,
    pub best_delta: f64,
    /// Index of the restart that produced the optimum.
    pub best_restart: usize,
    pub per_restart: Vec<RestartTrace>,
    /// Whether the winning restart met the `ftol` criterion.
    pub converged: bool,
}

/// Leakage of regular embeddings as a function of the free coordinates.
pub struct Objective {
    free: FreePhases,
    sqrt_p: Vec<f64>,
    support: Vec<(usize, usize)>,
    mutual_information: f64,
}

impl Objective {
    pub fn new(p: &JointDistribution) -> Self {
        let free = free_phase_coordinates(p);
        let support = p.support();
        Self {
            sqrt_p: support.iter().map(|&(x, y)| p.p(x, y).sqrt()).collect(),
            support,
            mutual_information: mutual_information(p),
            free,
        }
    }

    pub fn dimension(&self) -> usize {
        self.free.count()
    }

    pub fn free_phases(&self) -> &FreePhases {
        &self.free
    }

    /// `Δ` of the regular embedding with phases `embed(coords)`.
    pub fn evaluate(&self, coords: &[f64]) -> Result<f64> {
        let theta = self.free.embed(coords)?;
        let p = self.free.source();
        let mut m = CMatrix::zeros(p.nx(), p.ny());
        for ((&(x, y), &a), &t) in self.support.iter().zip(&self.sqrt_p).zip(theta.values()) {
            m[(x, y)] = C64::from_polar(a, t);
        }
        Ok(entanglement_entropy(&m)? - self.mutual_information)
    }
}

/// `Δ` of `build_regular(P, embed(coords))`.
pub fn evaluate_objective(p: &JointDistribution, coords: &[f64]) -> Result<f64> {
    Objective::new(p).evaluate(coords)
}

/// SplitMix64 finalizer applied to `seed + (index + 1)·γ`.
pub fn restart_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
}

fn run_restart(obj: &Objective, cfg: &OptimizerConfig, index: usize) -> Result<RestartTrace> {
    let k = obj.dimension();
    let start: Vec<f64> = if index == 0 {
        vec![0.0; k]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, index as u64));
        (0..k).map(|_| rng.random_range(0.0..TAU)).collect()
    };
    let mut failure = None;
    let mut f = |x: &[f64]| match obj.evaluate(x) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let out = nelder_mead(&mut f, &start, cfg.simplex_scale, cfg.ftol, cfg.max_iters);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(RestartTrace {
        index,
        start,
        final_coords: out.x.into_iter().map(fold_angle).collect(),
        final_delta: out.f,
        iterations: out.iterations,
        converged: out.converged,
    })
}

/// Multi-start downhill simplex over `[0, 2π)^k`. Restart 0 begins at the
/// canonical embedding; the others at uniform points drawn from per-restart
/// ChaCha streams. Restarts run in parallel and are reduced in index order,
/// so the result depends only on the seed.
pub fn minimize_leakage(p: &JointDistribution, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    let obj = Objective::new(p);
    let k = obj.dimension();
    if k > MAX_COORDINATES {
        return Err(Error::TooManyCoordinates {
            count: k,
            max: MAX_COORDINATES,
        });
    }
    // Without free coordinates every restart would repeat the same evaluation.
    let restarts = if k == 0 { 1 } else { cfg.restarts };
    let work = || -> Result<Vec<RestartTrace>> {
        (0..restarts)
            .into_par_iter()
            .map(|i| run_restart(&obj, cfg, i))
            .collect()
    };
    let pool = thread_count().and_then(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| log::warn!("{THREADS_ENV}={n} ignored: {e}"))
            .ok()
    });
    let per_restart = match pool {
        Some(pool) => pool.install(work)?,
        None => work()?,
    };

    let mut best = 0;
    for (i, t) in per_restart.iter().enumerate() {
        if t.final_delta < per_restart[best].final_delta {
            best = i;
        }
    }
    let winner = &per_restart[best];
    Ok(OptimizerResult {
        best_phases: obj.free.embed(&winner.final_coords)?,
        best_coords: winner.final_coords.clone(),
        best_delta: winner.final_delta,
        best_restart: best,
        converged: winner.converged,
        per_restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probdist::Alphabet;

    #[test]
    fn seeds_differ_per_restart() {
        let a = restart_seed(7, 0);
        let b = restart_seed(7, 1);
        let c = restart_seed(8, 0);
        assert!(a != b && a != c);
        assert_eq!(restart_seed(7, 3), restart_seed(7, 3));
    }

    #[test]
    fn trivial_distribution_has_zero_leakage() {
        let p = JointDistribution::new(
            Alphabet::indexed(2).unwrap(),
            Alphabet::indexed(2).unwrap(),
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
        )
        .unwrap();
        assert!(evaluate_objective(&p, &[]).unwrap().abs() < 1e-12);
        let r = minimize_leakage(&p, &OptimizerConfig::default()).unwrap();
        assert_eq!(r.per_restart.len(), 1);
        assert!(r.best_delta.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = OptimizerConfig {
            ftol: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let p = JointDistribution::new(
            Alphabet::indexed(2).unwrap(),
            Alphabet::indexed(2).unwrap(),
            vec![vec![0.25; 2]; 2],
        )
        .unwrap();
        assert!(matches!(
            evaluate_objective(&p, &[]),
            Err(Error::CoordinateCount { .. })
        ));
    }
}
