use rand::Rng;

use super::gen::{block_mixture, noise_split, random_distribution};
use super::{suite_rng, SuiteReport, Tally};
use crate::embeddings::{canonical, strict_correctness_check, EmbeddingState, STRICTNESS_TOLERANCE};
use crate::probdist::{
    conditional_entropy, conditional_entropy_x_given_y, connected_components, dependent_part,
    dependent_part_of_y, entropy_unchecked, is_trivial, mutual_information, randomize_function,
    Alphabet, FunctionOutcome, FunctionTable, JointDistribution,
};
use crate::quantum::{RegisterLayout, StateVector, C64};
use crate::Result;

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

/// Embedding of `P` with `B′` holding `g(x, y)`.
fn with_bob_copy(p: &JointDistribution, g: impl Fn(usize, usize) -> usize, dim: usize) -> Result<EmbeddingState> {
    let layout = RegisterLayout::new([("A", p.nx()), ("A'", 1), ("B", p.ny()), ("B'", dim)])?;
    let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
    for (x, y) in p.support() {
        amps[layout.index(&[x, 0, y, g(x, y)])] = C64::new(p.p(x, y).sqrt(), 0.0);
    }
    EmbeddingState::new(p.clone(), StateVector::normalized(layout, amps)?)
}

fn random_function_table<R: Rng + ?Sized>(rng: &mut R) -> FunctionTable {
    let a = Alphabet::indexed(rng.random_range(1..=3)).unwrap();
    let b = Alphabet::indexed(rng.random_range(1..=3)).unwrap();
    let cells = (0..a.len())
        .map(|_| {
            (0..b.len())
                .map(|_| {
                    let n = rng.random_range(1..=2);
                    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
                    let total: f64 = raw.iter().sum();
                    raw.iter()
                        .map(|v| FunctionOutcome {
                            w: rng.random_range(0..2).to_string(),
                            z: rng.random_range(0..2).to_string(),
                            prob: v / total,
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FunctionTable { a, b, cells }
}

/// Dependent-part identities, partition equality, triviality equivalence,
/// component decomposition, strict-correctness classification and
/// function randomization.
pub fn markov_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, 2);

    let mut identities = Tally::new("dependent_part_identities", 1e-9);
    let mut partitions = Tally::new("partition_equality", 0.5);
    let mut triviality = Tally::new("triviality_equivalence", 0.5);
    for _ in 0..100 {
        let base = random_distribution(&mut rng, 3, 3);
        let splits = rng.random_range(0..=2);
        let p = noise_split(&mut rng, &base, splits);
        let d = dependent_part(&p);
        let i_gap = (mutual_information(&p) - mutual_information(&d.collapsed)).abs();
        let h_gap = (conditional_entropy(&p) - conditional_entropy(&d.collapsed)).abs();
        identities.check(i_gap.max(h_gap));

        // X↘(Y↘X) against X↘Y.
        let y_collapsed = dependent_part_of_y(&p).collapsed.transpose();
        let twice = dependent_part(&y_collapsed);
        let equal = same_partition(&d.source_to_class, &twice.source_to_class);
        partitions.record(equal, if equal { 0.0 } else { 1.0 });

        let t = is_trivial(&p);
        triviality.record(t.consistent, if t.consistent { 0.0 } else { 1.0 });
    }

    let mut components = Tally::new("component_decomposition", 1e-9);
    for _ in 0..50 {
        let blocks = rng.random_range(1..=3);
        let (p, _, _) = block_mixture(&mut rng, blocks);
        let c = connected_components(&p);
        let rhs = entropy_unchecked(&c.weights) + c.conditional_mutual_information(&p);
        components.check((mutual_information(&p) - rhs).abs());
    }

    let mut strictness = Tally::new("strict_correctness_classification", 0.5);
    for _ in 0..50 {
        let p = random_distribution(&mut rng, 3, 3);
        let fy: Vec<usize> = (0..p.ny()).map(|_| rng.random_range(0..2)).collect();
        let pass = with_bob_copy(&p, |_, y| fy[y], 2)?;
        let regular = EmbeddingState::from_regular(&canonical(&p));
        let copy = with_bob_copy(&p, |x, _| x, p.nx())?;
        let report = strict_correctness_check(&copy, STRICTNESS_TOLERANCE)?;
        let h = conditional_entropy_x_given_y(&p);
        // A copy of X fails exactly when X is not determined by Y, with
        // residual H(X|Y).
        let copy_ok = (report.passed == (h < STRICTNESS_TOLERANCE))
            && (report.residual_bob - h).abs() < 1e-9;
        let ok = pass.strictly_correct() && regular.strictly_correct() && copy_ok;
        strictness.record(ok, if ok { 0.0 } else { 1.0 });
    }

    let mut functions = Tally::new("randomize_function_consistency", 1e-12);
    for _ in 0..50 {
        let f = random_function_table(&mut rng);
        let p = randomize_function(&f)?;
        let total: f64 = p.probs().iter().sum();
        let c = connected_components(&p);
        let weights: f64 = c.weights.iter().sum();
        functions.check((total - 1.0).abs().max((weights - 1.0).abs()));
    }

    Ok(SuiteReport {
        suite: "markov".into(),
        seed,
        properties: vec![
            identities.finish(),
            partitions.finish(),
            triviality.finish(),
            components.finish(),
            strictness.finish(),
            functions.finish(),
        ],
    })
}
