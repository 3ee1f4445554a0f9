use super::eigen::{hermitian_eigen, psd_spectrum, spectral_entropy, HERMITIAN_TOLERANCE};
use super::ensemble::CqEnsemble;
use super::layout::RegisterLayout;
use super::matrix::{cogram, CMatrix, ZERO};
use super::state::renormalize;
use crate::probdist::Alphabet;
use crate::{Error, Result};

/// Allowed deviation of the trace from 1.
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// A Hermitian positive semidefinite unit-trace matrix on a register layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: RegisterLayout,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(layout: RegisterLayout, matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: matrix.rows(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::InvalidTrace(tr));
        }
        psd_spectrum(&matrix)?;
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts(layout: RegisterLayout, matrix: CMatrix) -> Self {
        debug_assert_eq!(layout.dim(), matrix.rows());
        Self { layout, matrix }
    }

    pub fn maximally_mixed(layout: RegisterLayout) -> Self {
        let d = layout.dim();
        Self::from_parts(layout, CMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    /// Descending spectrum with the clamp of [`psd_spectrum`].
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        psd_spectrum(&self.matrix)
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        Ok(spectral_entropy(&self.eigenvalues()?))
    }

    /// `tr_rest ρ`, keeping the named registers in layout order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        let (k, t, map) = self.layout.split_indices(keep)?;
        let (dk, dt) = (k.dim(), t.dim());
        let mut full = vec![0usize; dk * dt];
        for (i, &(ki, ti)) in map.iter().enumerate() {
            full[ki * dt + ti] = i;
        }
        let mut out = CMatrix::zeros(dk, dk);
        for r in 0..dk {
            for c in r..dk {
                let v = (0..dt)
                    .map(|ti| self.matrix[(full[r * dt + ti], full[c * dt + ti])])
                    .sum();
                out[(r, c)] = v;
                if r != c {
                    out[(c, r)] = v.conj();
                }
            }
        }
        Ok(Self::from_parts(k, out))
    }

    /// Traces out the named registers.
    pub fn trace_out(&self, names: &[&str]) -> Result<Self> {
        let keep = self.layout.without(names)?;
        self.partial_trace(&keep.names())
    }

    fn blocks(&self, register: &str) -> Result<(RegisterLayout, Vec<Vec<usize>>)> {
        let (_, rest, map) = self.layout.split_indices(&[register])?;
        let d = self.layout.register_dim(register)?;
        let mut table = vec![vec![0usize; rest.dim()]; d];
        for (i, &(r, t)) in map.iter().enumerate() {
            table[r][t] = i;
        }
        Ok((rest, table))
    }

    /// Outcome probabilities of measuring one register.
    pub fn register_probabilities(&self, register: &str) -> Result<Vec<f64>> {
        let (_, table) = self.blocks(register)?;
        Ok(table
            .iter()
            .map(|idx| idx.iter().map(|&i| self.matrix[(i, i)].re).sum())
            .collect())
    }

    pub fn measure(&self, register: &str) -> Result<CqEnsemble> {
        let labels = Alphabet::indexed(self.layout.register_dim(register)?)?;
        self.measure_labeled(register, &labels)
    }

    /// Computational-basis measurement of one register; outcome `r` leaves
    /// `⟨r|ρ|r⟩ / p_r` on the remaining registers. Zero-probability outcomes
    /// are omitted.
    pub fn measure_labeled(&self, register: &str, labels: &Alphabet) -> Result<CqEnsemble> {
        let (rest, table) = self.blocks(register)?;
        if labels.len() != table.len() {
            return Err(Error::DimensionMismatch {
                expected: table.len(),
                found: labels.len(),
            });
        }
        let mut kept = Vec::new();
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (r, idx) in table.iter().enumerate() {
            let block = CMatrix::from_fn(idx.len(), idx.len(), |a, b| self.matrix[(idx[a], idx[b])]);
            let w = block.trace().re;
            if w <= 1e-15 {
                continue;
            }
            kept.push(r);
            weights.push(w);
            states.push(Self::from_parts(rest.clone(), block.scale_real(1.0 / w)));
        }
        CqEnsemble::from_parts(labels.subset(&kept), renormalize(weights), states)
    }

    /// Removes coherences between different values of `register`.
    pub fn dephase(&self, register: &str) -> Result<Self> {
        let pos = self.layout.position(register)?;
        let digit: Vec<usize> = (0..self.dim()).map(|i| self.layout.digits(i)[pos]).collect();
        let mut m = self.matrix.clone();
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if digit[r] != digit[c] {
                    m[(r, c)] = ZERO;
                }
            }
        }
        Ok(Self::from_parts(self.layout.clone(), m))
    }

    /// `U ρ U†` for a unitary on the whole space.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        let m = &(u * &self.matrix) * &u.adjoint();
        Ok(Self::from_parts(self.layout.clone(), m.hermitian_part()))
    }
}

/// `S(ρ) − S(tr_rest ρ)`: the entropy of the other registers conditioned
/// on `given`.
pub fn conditional_vn_entropy(rho: &DensityMatrix, given: &[&str]) -> Result<f64> {
    Ok(rho.entropy()? - rho.partial_trace(given)?.entropy()?)
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if m.hermitian_deviation() <= 1e-12 {
        let e = hermitian_eigen(m, false)?;
        return Ok(e.values.iter().map(|v| v.abs()).sum());
    }
    let e = hermitian_eigen(&cogram(m).hermitian_part(), false)?;
    Ok(e.values.iter().map(|v| v.max(0.0).sqrt()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::matrix::C64;

    fn qubit(name: &str) -> RegisterLayout {
        RegisterLayout::single(name, 2).unwrap()
    }

    #[test]
    fn maximally_mixed_two_qubits() {
        let a = DensityMatrix::maximally_mixed(qubit("A"));
        let b = DensityMatrix::maximally_mixed(qubit("B"));
        let ab = a.tensor(&b).unwrap();
        assert!(ab.matrix().max_abs_diff(&CMatrix::identity(4).scale_real(0.25)) < 1e-15);
        assert!((ab.entropy().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = DensityMatrix::new(
            qubit("A"),
            CMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap(),
        )
        .unwrap();
        let sigma = DensityMatrix::maximally_mixed(qubit("B"));
        let back = rho.tensor(&sigma).unwrap().partial_trace(&["A"]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn validation_errors() {
        let l = qubit("A");
        let not_herm = CMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(
            DensityMatrix::new(l.clone(), not_herm),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(l.clone(), CMatrix::identity(2)),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityMatrix::new(l, CMatrix::diagonal(&[1.5, -0.5])),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn trace_norms() {
        assert_eq!(trace_norm(&CMatrix::zeros(3, 3)).unwrap(), 0.0);
        let d = CMatrix::diagonal(&[1.0, -1.0]);
        assert!((trace_norm(&d).unwrap() - 2.0).abs() < 1e-15);
        // Nilpotent |0><1| has a single unit singular value.
        let mut n = CMatrix::zeros(2, 2);
        n[(0, 1)] = C64::new(1.0, 0.0);
        assert!((trace_norm(&n).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dephasing_keeps_diagonal() {
        let plus = DensityMatrix::new(
            qubit("A"),
            CMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap(),
        )
        .unwrap();
        let d = plus.dephase("A").unwrap();
        assert!(d.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }
}
