//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::matrix::{CMatrix, C64, ZERO};
use crate::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_DIMENSION: usize = 4096;
/// Allowed `|m_ij − conj(m_ji)|`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Eigenvalues in `(−CLAMP_WINDOW, 0)` are reported as zero.
pub const CLAMP_WINDOW: f64 = 1e-10;
/// Convergence threshold on the off-diagonal Frobenius mass.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with optional eigenvectors as the columns
/// of `vectors` (same order).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<CMatrix>,
}

impl Eigen {
    /// Eigenvector `k` as a column.
    pub fn vector(&self, k: usize) -> Option<Vec<C64>> {
        let v = self.vectors.as_ref()?;
        Some((0..v.rows()).map(|r| v[(r, k)]).collect())
    }
}

fn off_diagonal_mass(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Full spectral decomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when the input deviates from its
/// adjoint by more than [`HERMITIAN_TOLERANCE`]. The Hermitian part is what
/// gets diagonalized.
pub fn hermitian_eigen(m: &CMatrix, want_vectors: bool) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_DIMENSION,
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }

    let mut a: Vec<C64> = m.hermitian_part().data().to_vec();
    let mut v: Option<Vec<C64>> = want_vectors.then(|| CMatrix::identity(n).data().to_vec());
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = OFF_DIAGONAL_TOLERANCE * scale.max(1.0);

    let mut converged = off_diagonal_mass(&a, n) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
        converged = off_diagonal_mass(&a, n) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| CMatrix::from_fn(n, n, |r, c| v[r * n + order[c]]));
    Ok(Eigen { values, vectors })
}

// Annihilates a[p][q] with the unitary G (G_pp = G_qq = c, G_pq = s·u,
// G_qp = −s·ū) via A ← G† A G and V ← V G.
fn rotate(a: &mut [C64], v: Option<&mut [C64]>, n: usize, p: usize, q: usize) {
    let b = a[p * n + q];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Negligible relative to the diagonal gap: the rotation would be a no-op.
    if mag < 1e-300 || mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let u = b / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let g_pq = u * s;
    let g_qp = -(u.conj() * s);

    // Columns: A ← A G.
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * g_qp;
        a[k * n + q] = akp * g_pq + akq * c;
    }
    // Rows: A ← G† A.
    let (gd_pq, gd_qp) = (g_qp.conj(), g_pq.conj());
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + aqk * gd_pq;
        a[q * n + k] = apk * gd_qp + aqk * c;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * c + vkq * g_qp;
            v[k * n + q] = vkp * g_pq + vkq * c;
        }
    }
}

/// Descending eigenvalues of a positive semidefinite matrix.
///
/// Values in `(−1e-10, 0)` are clamped to zero; anything lower is an error.
pub fn psd_spectrum(m: &CMatrix) -> Result<Vec<f64>> {
    let mut values = hermitian_eigen(m, false)?.values;
    for v in values.iter_mut() {
        if *v < 0.0 {
            if *v <= -CLAMP_WINDOW {
                return Err(Error::NegativeEigenvalue(*v));
            }
            *v = 0.0;
        }
    }
    Ok(values)
}

/// Shannon entropy in bits of a spectrum; values below 1e-15 contribute 0.
pub fn spectral_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p >= 1e-15)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `f(M)` for Hermitian `M`, applied through the eigendecomposition.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let e = hermitian_eigen(m, true)?;
    let v = e.vectors.expect("vectors requested");
    let n = m.rows();
    let fv: Vec<f64> = e.values.iter().map(|&x| f(x)).collect();
    Ok(CMatrix::from_fn(n, n, |r, c| {
        (0..n).map(|k| v[(r, k)] * fv[k] * v[(c, k)].conj()).sum()
    }))
}

/// Principal square root of a PSD matrix.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    hermitian_function(m, |x| x.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &Eigen) -> CMatrix {
        let v = e.vectors.as_ref().unwrap();
        let d = CMatrix::diagonal(&e.values);
        &(v * &d) * &v.adjoint()
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = CMatrix::from_vec(
            2,
            2,
            vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO],
        )
        .unwrap();
        let e = hermitian_eigen(&m, true).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        assert!(reconstruct(&e).max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn complex_three_by_three() {
        let m = CMatrix::from_vec(
            3,
            3,
            vec![
                C64::new(2.0, 0.0),
                C64::new(1.0, 1.0),
                C64::new(0.0, -0.5),
                C64::new(1.0, -1.0),
                C64::new(3.0, 0.0),
                C64::new(0.25, 0.0),
                C64::new(0.0, 0.5),
                C64::new(0.25, 0.0),
                C64::new(-1.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&m, true).unwrap();
        assert!(reconstruct(&e).max_abs_diff(&m) < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let tr: f64 = e.values.iter().sum();
        assert!((tr - 4.0).abs() < 1e-12);
        let v = e.vectors.unwrap();
        assert!((&v.adjoint() * &v).max_abs_diff(&CMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            hermitian_eigen(&m, false),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn clamps_tiny_negatives_and_rejects_large_ones() {
        let m = CMatrix::diagonal(&[1.0, -1e-12]);
        assert_eq!(psd_spectrum(&m).unwrap(), vec![1.0, 0.0]);
        let bad = CMatrix::diagonal(&[1.0, -1e-6]);
        assert!(matches!(psd_spectrum(&bad), Err(Error::NegativeEigenvalue(_))));
    }

    #[test]
    fn square_root_squares_back() {
        let m = CMatrix::from_real(2, 2, &[0.75, 0.25, 0.25, 0.25]).unwrap();
        let r = psd_sqrt(&m).unwrap();
        assert!((&r * &r).max_abs_diff(&m) < 1e-13);
    }
}
