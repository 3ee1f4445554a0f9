use super::gen::{noise_split, random_distribution};
use super::{suite_rng, SuiteReport, Tally};
use crate::embeddings::{environment_monotones, ideal_functionality_state, tripartite_leakage};
use crate::primitives::{catalog, PrimitiveSpec};
use crate::probdist::{collapse_both, JointDistribution};
use crate::Result;
use rand::Rng;

const TOL: f64 = 1e-9;

fn check_ideal(p: &JointDistribution, leak: &mut Tally, ineq: &mut Tally) -> Result<()> {
    let t = ideal_functionality_state(p);
    leak.check(tripartite_leakage(&t)?.delta.abs());
    let m = environment_monotones(&t)?;
    let gap = (m.h_y_given_x - m.s_w_given_x_aprime)
        .max(m.h_x_given_y - m.s_w_given_y_bprime)
        .max(0.0);
    ineq.record(m.inequalities_hold(TOL), gap);
    Ok(())
}

/// Zero leakage of ideal-functionality states and the environment
/// inequalities on random, collapsed and catalog distributions.
pub fn monotone_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, 4);
    let mut leak = Tally::new("ideal_state_leaks_nothing", TOL);
    let mut ineq = Tally::new("environment_inequalities", TOL);

    for _ in 0..40 {
        let base = random_distribution(&mut rng, 3, 3);
        let splits = rng.random_range(0..=2);
        let p = noise_split(&mut rng, &base, splits);
        check_ideal(&p, &mut leak, &mut ineq)?;
        check_ideal(&collapse_both(&p), &mut leak, &mut ineq)?;
    }
    for kind in catalog() {
        check_ideal(&PrimitiveSpec::build(kind)?.dist, &mut leak, &mut ineq)?;
    }

    Ok(SuiteReport {
        suite: "monotone".into(),
        seed,
        properties: vec![leak.finish(), ineq.finish()],
    })
}
