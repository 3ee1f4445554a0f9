use rand::Rng;

use super::{suite_rng, SuiteReport, Tally};
use crate::attacks::average_encoding_gap;
use crate::probdist::{entropy_unchecked, Alphabet};
use crate::quantum::random::{haar_unitary, random_density, random_state};
use crate::quantum::{CMatrix, CqEnsemble, RegisterLayout};
use crate::Result;

fn random_ensemble<R: Rng + ?Sized>(rng: &mut R) -> Result<CqEnsemble> {
    let labels = rng.random_range(1..=4);
    let dim = rng.random_range(2..=8);
    let layout = RegisterLayout::single("R", dim)?;
    let raw: Vec<f64> = (0..labels).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let states = (0..labels)
        .map(|_| {
            let rank = rng.random_range(1..=dim);
            random_density(layout.clone(), rank, rng)
        })
        .collect();
    CqEnsemble::new(
        Alphabet::indexed(labels)?,
        raw.iter().map(|w| w / total).collect(),
        states,
    )
}

/// Holevo dominance, the average-encoding inequality, invariance of cq-state
/// entropies under controlled unitaries, unitary invariance of entropy and
/// equal spectra of complementary reductions.
pub fn holevo_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, 3);

    let mut dominance = Tally::new("holevo_dominance", 1e-9);
    for _ in 0..200 {
        let e = random_ensemble(&mut rng)?;
        let excess = e.computational_accessible_information() - e.holevo_information()?;
        dominance.check(excess.max(0.0));
    }

    let mut encoding = Tally::new("average_encoding", 1e-9);
    for _ in 0..200 {
        let e = random_ensemble(&mut rng)?;
        let (lhs, rhs) = average_encoding_gap(&e)?;
        encoding.check((lhs - rhs).max(0.0));
    }

    let mut controlled = Tally::new("cq_controlled_unitary", 1e-9);
    for _ in 0..50 {
        let e = random_ensemble(&mut rng)?;
        let cq = e.cq_state("X")?;
        let n = e.weights().len();
        let d = e.states()[0].dim();
        let blocks: Vec<CMatrix> = (0..n).map(|_| haar_unitary(d, &mut rng)).collect();
        let u = CMatrix::from_fn(n * d, n * d, |r, c| {
            if r / d == c / d {
                blocks[r / d][(r % d, c % d)]
            } else {
                crate::quantum::C64::new(0.0, 0.0)
            }
        });
        let moved = cq.conjugate(&u)?;
        let ds = (moved.entropy()? - cq.entropy()?).abs();
        let hx = entropy_unchecked(&moved.register_probabilities("X")?);
        let dh = (hx - entropy_unchecked(e.weights())).abs();
        controlled.check(ds.max(dh));
    }

    let mut unitary = Tally::new("entropy_unitary_invariance", 1e-9);
    for _ in 0..50 {
        let d = rng.random_range(2..=8);
        let rank = rng.random_range(1..=d);
        let rho = random_density(RegisterLayout::single("R", d)?, rank, &mut rng);
        let u = haar_unitary(d, &mut rng);
        unitary.check((rho.conjugate(&u)?.entropy()? - rho.entropy()?).abs());
    }

    let mut schmidt = Tally::new("complementary_spectra", 1e-9);
    for _ in 0..50 {
        let layout = RegisterLayout::new([("A", rng.random_range(1..=6)), ("B", rng.random_range(1..=6))])?;
        let psi = random_state(layout, &mut rng);
        let a = psi.reduced(&["A"])?.eigenvalues()?;
        let b = psi.reduced(&["B"])?.eigenvalues()?;
        let worst = (0..a.len().max(b.len()))
            .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max);
        schmidt.check(worst);
    }

    Ok(SuiteReport {
        suite: "holevo".into(),
        seed,
        properties: vec![
            dominance.finish(),
            encoding.finish(),
            controlled.finish(),
            unitary.finish(),
            schmidt.finish(),
        ],
    })
}
