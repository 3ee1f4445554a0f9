//! Random states and unitaries for property tests and suites.

use rand::Rng;
use rand_distr::StandardNormal;

use super::density::DensityMatrix;
use super::layout::RegisterLayout;
use super::matrix::{inner, norm, CMatrix, C64};
use super::state::StateVector;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_state<R: Rng + ?Sized>(layout: RegisterLayout, rng: &mut R) -> StateVector {
    let amps = (0..layout.dim()).map(|_| gaussian(rng)).collect();
    StateVector::normalized(layout, amps).expect("gaussian vector is nonzero")
}

/// Random mixed state `G G† / tr(G G†)` with `G` a `dim × rank` Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(
    layout: RegisterLayout,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let d = layout.dim();
    let g = CMatrix::from_vec(d, rank, (0..d * rank).map(|_| gaussian(rng)).collect())
        .expect("shape matches");
    let m = super::matrix::gram(&g);
    let tr = m.trace().re;
    DensityMatrix::from_parts(layout, m.scale_real(1.0 / tr))
}

/// Haar-random unitary: Gram–Schmidt on the columns of a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for q in &cols {
            let proj = inner(q, &v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let nv = norm(&v);
        if nv < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / nv).collect());
    }
    CMatrix::from_fn(n, n, |r, c| cols[c][r])
}
