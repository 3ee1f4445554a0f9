use std::f64::consts::TAU;

use rand::Rng;

use super::gen::{block_mixture, random_distribution, strictly_correct_embedding};
use super::{suite_rng, SuiteReport, Tally};
use crate::embeddings::{
    build_regular, entanglement_entropy, free_phase_coordinates, leakage_regular, EmbeddingState,
    PhaseAssignment,
};
use crate::quantum::random::haar_unitary;
use crate::Result;

/// Directed-leakage symmetry of strictly correct embeddings, local-unitary
/// invariance, additivity over connected components and gauge reduction.
pub fn symmetry_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, 1);

    let mut symmetric = Tally::new("directed_leakages_agree", 1e-8);
    for _ in 0..100 {
        let p = random_distribution(&mut rng, 4, 4);
        let (da, db) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let state = strictly_correct_embedding(&mut rng, &p, da, db);
        let e = EmbeddingState::new(p, state)?;
        let r = e.leakage()?;
        let diff = r.asymmetry();
        symmetric.record(e.strictly_correct() && diff < 1e-8, diff);
    }

    let mut local = Tally::new("local_unitary_invariance", 1e-9);
    for _ in 0..50 {
        let p = random_distribution(&mut rng, 4, 4);
        let theta = PhaseAssignment::from_fn(&p, |_, _| rng.random_range(0.0..TAU));
        let e = build_regular(&p, &theta)?;
        let before = leakage_regular(&e)?.delta;
        let side = if rng.random_bool(0.5) { "A" } else { "B" };
        let u = haar_unitary(e.state().layout().register_dim(side)?, &mut rng);
        let moved = e.state().apply_local(side, &u)?;
        let (_, _, m) = moved.coefficient_matrix(&["A"])?;
        let after = entanglement_entropy(&m)? - (leakage_regular(&e)?.mutual_information);
        local.check((before - after).abs());
    }

    let mut additive = Tally::new("component_additivity", 1e-9);
    for _ in 0..50 {
        let blocks = rng.random_range(2..=3);
        let (p, parts, weights) = block_mixture(&mut rng, blocks);
        let mut phases = Vec::new();
        let mut expected = 0.0;
        for (part, w) in parts.iter().zip(&weights) {
            let theta: Vec<f64> = (0..part.support().len()).map(|_| rng.random_range(0.0..TAU)).collect();
            let e = build_regular(part, &PhaseAssignment::from_vec(part, theta.clone())?)?;
            expected += w * leakage_regular(&e)?.delta;
            phases.push(theta);
        }
        // Support order of the mixture lists each block's rows contiguously,
        // so the mixture phases are the blocks' phases row by row.
        let mut theta = Vec::new();
        let mut offsets = Vec::new();
        let mut acc = (0usize, 0usize);
        for part in &parts {
            offsets.push(acc);
            acc = (acc.0 + part.nx(), acc.1 + part.ny());
        }
        for &(x, y) in &p.support() {
            let j = offsets.iter().rposition(|&(ox, _)| x >= ox).expect("row in a block");
            let (ox, oy) = offsets[j];
            let local_support = parts[j].support();
            let k = local_support.binary_search(&(x - ox, y - oy)).expect("support pair");
            theta.push(phases[j][k]);
        }
        let e = build_regular(&p, &PhaseAssignment::from_vec(&p, theta)?)?;
        additive.check((leakage_regular(&e)?.delta - expected).abs());
    }

    let mut gauge = Tally::new("gauge_reduction", 1e-9);
    for _ in 0..50 {
        let p = random_distribution(&mut rng, 4, 4);
        let theta = PhaseAssignment::from_fn(&p, |_, _| rng.random_range(0.0..TAU));
        let free = free_phase_coordinates(&p);
        let reduced = free.embed(&free.gauge_reduce(&theta)?)?;
        let a = leakage_regular(&build_regular(&p, &theta)?)?.delta;
        let b = leakage_regular(&build_regular(&p, &reduced)?)?.delta;
        gauge.check((a - b).abs());
    }

    Ok(SuiteReport {
        suite: "symmetry".into(),
        seed,
        properties: vec![symmetric.finish(), local.finish(), additive.finish(), gauge.finish()],
    })
}

