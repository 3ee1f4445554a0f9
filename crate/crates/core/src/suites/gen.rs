//! Random primitives and embeddings for the suites.

use std::f64::consts::TAU;

use rand::Rng;

use crate::probdist::{Alphabet, JointDistribution};
use crate::quantum::random::haar_unitary;
use crate::quantum::{RegisterLayout, StateVector, C64};

/// Random `P` with `2..=max_x` by `2..=max_y` symbols, roughly a third of the
/// entries zero, and strictly positive marginals.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, max_x: usize, max_y: usize) -> JointDistribution {
    let nx = rng.random_range(2..=max_x.max(2));
    let ny = rng.random_range(2..=max_y.max(2));
    random_table(rng, nx, ny)
}

pub fn random_table<R: Rng + ?Sized>(rng: &mut R, nx: usize, ny: usize) -> JointDistribution {
    let mut rows: Vec<Vec<f64>> = (0..nx)
        .map(|_| {
            (0..ny)
                .map(|_| {
                    if rng.random_bool(0.35) {
                        0.0
                    } else {
                        rng.random_range(0.05..1.0)
                    }
                })
                .collect()
        })
        .collect();
    for (x, row) in rows.iter_mut().enumerate() {
        if row.iter().all(|&v| v == 0.0) {
            row[x % ny] = rng.random_range(0.05..1.0);
        }
    }
    for y in 0..ny {
        if rows.iter().all(|r| r[y] == 0.0) {
            rows[y % nx][y] = rng.random_range(0.05..1.0);
        }
    }
    normalized(rows)
}

pub(crate) fn normalized(mut rows: Vec<Vec<f64>>) -> JointDistribution {
    let s: f64 = rows.iter().flatten().sum();
    for v in rows.iter_mut().flatten() {
        *v /= s;
    }
    let (nx, ny) = (rows.len(), rows[0].len());
    JointDistribution::new(
        Alphabet::indexed(nx).unwrap(),
        Alphabet::indexed(ny).unwrap(),
        rows,
    )
    .expect("normalized table")
}

/// Splits random rows and columns into proportional copies, so several
/// symbols share a conditional distribution.
pub fn noise_split<R: Rng + ?Sized>(rng: &mut R, p: &JointDistribution, splits: usize) -> JointDistribution {
    let mut rows: Vec<Vec<f64>> = (0..p.nx()).map(|x| p.row(x).to_vec()).collect();
    for _ in 0..splits {
        let f = rng.random_range(0.2..0.8);
        if rng.random_bool(0.5) {
            let x = rng.random_range(0..rows.len());
            let copy: Vec<f64> = rows[x].iter().map(|v| v * (1.0 - f)).collect();
            rows[x].iter_mut().for_each(|v| *v *= f);
            rows.push(copy);
        } else {
            let y = rng.random_range(0..rows[0].len());
            for r in rows.iter_mut() {
                let v = r[y];
                r[y] = v * f;
                r.push(v * (1.0 - f));
            }
        }
    }
    normalized(rows)
}

/// Block-diagonal mixture `⊕_j w_j P_j` together with its blocks and weights.
pub fn block_mixture<R: Rng + ?Sized>(
    rng: &mut R,
    blocks: usize,
) -> (JointDistribution, Vec<JointDistribution>, Vec<f64>) {
    let parts: Vec<JointDistribution> = (0..blocks).map(|_| random_distribution(rng, 3, 3)).collect();
    let raw: Vec<f64> = (0..blocks).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let nx: usize = parts.iter().map(|p| p.nx()).sum();
    let ny: usize = parts.iter().map(|p| p.ny()).sum();
    let mut rows = vec![vec![0.0; ny]; nx];
    let (mut ox, mut oy) = (0, 0);
    for (p, w) in parts.iter().zip(&weights) {
        for x in 0..p.nx() {
            for y in 0..p.ny() {
                rows[ox + x][oy + y] = w * p.p(x, y);
            }
        }
        ox += p.nx();
        oy += p.ny();
    }
    (normalized(rows), parts, weights)
}

/// A pure embedding on `[A, A′, B, B′]` satisfying both Markov conditions:
/// `Σ √P e^{iθ} |x⟩|y⟩ ⊗ Σ_k √λ_k e^{iθ′(k,x,y)} |e_k^x⟩_{A′} |f_k^y⟩_{B′}`
/// with per-`x` and per-`y` orthonormal bases and `x, y`-independent weights.
pub fn strictly_correct_embedding<R: Rng + ?Sized>(
    rng: &mut R,
    p: &JointDistribution,
    dim_a: usize,
    dim_b: usize,
) -> StateVector {
    let (nx, ny) = (p.nx(), p.ny());
    let k = dim_a.min(dim_b);
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let lambda: Vec<f64> = raw.iter().map(|v| v / total).collect();
    let alice_bases: Vec<_> = (0..nx).map(|_| haar_unitary(dim_a, rng)).collect();
    let bob_bases: Vec<_> = (0..ny).map(|_| haar_unitary(dim_b, rng)).collect();
    let layout = RegisterLayout::new([("A", nx), ("A'", dim_a), ("B", ny), ("B'", dim_b)]).unwrap();
    let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
    for (x, y) in p.support() {
        let outer = C64::from_polar(p.p(x, y).sqrt(), rng.random_range(0.0..TAU));
        for (kk, l) in lambda.iter().enumerate() {
            let coef = outer * C64::from_polar(l.sqrt(), rng.random_range(0.0..TAU));
            for a in 0..dim_a {
                for b in 0..dim_b {
                    let idx = layout.index(&[x, a, y, b]);
                    amps[idx] += coef * alice_bases[x][(a, kk)] * bob_bases[y][(b, kk)];
                }
            }
        }
    }
    StateVector::normalized(layout, amps).expect("nonzero state")
}
