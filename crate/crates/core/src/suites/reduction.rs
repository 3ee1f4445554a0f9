use std::f64::consts::TAU;

use rand::Rng;

use super::gen::{noise_split, random_table};
use super::{suite_rng, SuiteReport, Tally};
use crate::embeddings::{build_regular, leakage_regular, PhaseAssignment};
use crate::optimize::{minimize_leakage, OptimizerConfig};
use crate::primitives::{make_ot, make_rot};
use crate::probdist::{dependent_part, JointDistribution};
use crate::Result;

const OPT_TOL: f64 = 1e-4;

fn delta(p: &JointDistribution, theta: &PhaseAssignment) -> Result<f64> {
    Ok(leakage_regular(&build_regular(p, theta)?)?.delta)
}

/// Lifting class-constant phases to the uncollapsed distribution, the
/// optimized leakage bound against the collapsed form, and OT dominating ROT.
pub fn reduction_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, 5);

    let mut lift = Tally::new("class_constant_lift", 1e-9);
    let mut optimized = Tally::new("collapsed_form_lower_bound", OPT_TOL);
    for case in 0..40 {
        let base = random_table(&mut rng, 2, 2);
        let splits = rng.random_range(1..=2);
        let p = noise_split(&mut rng, &base, splits);
        let dx = dependent_part(&p);
        let dy = dependent_part(&dx.collapsed.transpose());
        let c = dy.collapsed.transpose();

        let mut grid = vec![vec![0.0; c.ny()]; c.nx()];
        for row in grid.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.random_range(0.0..TAU);
            }
        }
        let theta_c = PhaseAssignment::from_fn(&c, |x, y| grid[x][y]);
        let theta_p = PhaseAssignment::from_fn(&p, |x, y| {
            grid[dx.source_to_class[x]][dy.source_to_class[y]]
        });
        lift.check((delta(&p, &theta_p)? - delta(&c, &theta_c)?).abs());

        if case < 20 {
            let seed = seed.wrapping_add(case as u64);
            let full = minimize_leakage(&p, &OptimizerConfig { restarts: 8, seed, ..Default::default() })?;
            let small = minimize_leakage(&c, &OptimizerConfig { restarts: 16, seed, ..Default::default() })?;
            optimized.check((small.best_delta - full.best_delta).max(0.0));
        }
    }

    let mut dominance = Tally::new("ot_dominates_rot", OPT_TOL);
    let ot = minimize_leakage(&make_ot(1)?.dist, &OptimizerConfig { seed, ..Default::default() })?;
    let rot = make_rot(1)?.dist;
    let rot_delta = delta(&rot, &PhaseAssignment::zeros(&rot))?;
    dominance.check((rot_delta - ot.best_delta).max(0.0));

    Ok(SuiteReport {
        suite: "reduction".into(),
        seed,
        properties: vec![lift.finish(), optimized.finish(), dominance.finish()],
    })
}
