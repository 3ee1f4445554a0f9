use super::density::DensityMatrix;
use super::ensemble::CqEnsemble;
use super::layout::RegisterLayout;
use super::matrix::{gram, kron_vec, norm, CMatrix, C64, ONE, ZERO};
use crate::probdist::Alphabet;
use crate::{Error, Result};

/// Allowed deviation of `‖ψ‖₂` from 1.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A normalized pure state on a register layout.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(layout: RegisterLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalizedState { norm: n });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(layout: RegisterLayout, mut amplitudes: Vec<C64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalizedState { norm: n });
        }
        for a in amplitudes.iter_mut() {
            *a /= n;
        }
        Self::new(layout, amplitudes)
    }

    pub fn basis(layout: RegisterLayout, index: usize) -> Result<Self> {
        let mut amps = vec![ZERO; layout.dim()];
        if index >= amps.len() {
            return Err(Error::DimensionMismatch {
                expected: amps.len(),
                found: index,
            });
        }
        amps[index] = ONE;
        Self::new(layout, amps)
    }

    pub(crate) fn from_parts(layout: RegisterLayout, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(layout.dim(), amplitudes.len());
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_parts(self.layout.clone(), CMatrix::projector(&self.amplitudes))
    }

    /// The amplitudes reshaped as a `kept × rest` matrix.
    pub fn coefficient_matrix(&self, keep: &[&str]) -> Result<(RegisterLayout, RegisterLayout, CMatrix)> {
        let (k, t, map) = self.layout.split_indices(keep)?;
        let mut m = CMatrix::zeros(k.dim(), t.dim());
        for (i, &(ki, ti)) in map.iter().enumerate() {
            m[(ki, ti)] = self.amplitudes[i];
        }
        Ok((k, t, m))
    }

    /// `tr_rest |ψ⟩⟨ψ|` computed as `M M†` of the coefficient matrix.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let (k, _, m) = self.coefficient_matrix(keep)?;
        Ok(DensityMatrix::from_parts(k, gram(&m)))
    }

    /// Outcome probabilities of a computational-basis measurement of one register.
    pub fn register_probabilities(&self, register: &str) -> Result<Vec<f64>> {
        let (_, _, m) = self.coefficient_matrix(&[register])?;
        Ok((0..m.rows())
            .map(|r| m.row(r).iter().map(|a| a.norm_sqr()).sum())
            .collect())
    }

    /// Measures `register` in the computational basis. Outcome labels are
    /// `"0"`, `"1"`, ...
    pub fn measure(&self, register: &str) -> Result<CqEnsemble> {
        let labels = Alphabet::indexed(self.layout.register_dim(register)?)?;
        self.measure_labeled(register, &labels)
    }

    /// Like [`StateVector::measure`] with caller-supplied outcome labels.
    /// Zero-probability outcomes are omitted.
    pub fn measure_labeled(&self, register: &str, labels: &Alphabet) -> Result<CqEnsemble> {
        let (_, rest, m) = self.coefficient_matrix(&[register])?;
        if labels.len() != m.rows() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: labels.len(),
            });
        }
        let mut kept = Vec::new();
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for r in 0..m.rows() {
            let branch = m.row(r);
            let w: f64 = branch.iter().map(|a| a.norm_sqr()).sum();
            if w <= 1e-15 {
                continue;
            }
            let s = w.sqrt();
            let residual: Vec<C64> = branch.iter().map(|a| a / s).collect();
            kept.push(r);
            weights.push(w);
            states.push(DensityMatrix::from_parts(rest.clone(), CMatrix::projector(&residual)));
        }
        CqEnsemble::from_parts(labels.subset(&kept), renormalize(weights), states)
    }

    /// Applies `op` to one register: `(I ⊗ op ⊗ I)|ψ⟩`. The result must stay
    /// normalized, so `op` is expected to be unitary.
    pub fn apply_local(&self, register: &str, op: &CMatrix) -> Result<Self> {
        let pos = self.layout.position(register)?;
        let d = self.layout.registers()[pos].1;
        if op.rows() != d || op.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: op.rows(),
            });
        }
        let mut out = vec![ZERO; self.dim()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let mut digits = self.layout.digits(i);
            let col = digits[pos];
            for row in 0..d {
                digits[pos] = row;
                out[self.layout.index(&digits)] += op[(row, col)] * a;
            }
        }
        Self::new(self.layout.clone(), out)
    }
}

pub(crate) fn renormalize(mut weights: Vec<f64>) -> Vec<f64> {
    let s: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= s;
    }
    weights
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubits(names: &[&str]) -> RegisterLayout {
        RegisterLayout::new(names.iter().map(|n| (*n, 2))).unwrap()
    }

    fn bell() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(
            qubits(&["A", "B"]),
            vec![C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let z = StateVector::basis(qubits(&["A"]), 0).unwrap();
        let o = StateVector::basis(qubits(&["B"]), 1).unwrap();
        let t = z.tensor(&o).unwrap();
        assert_eq!(t.amplitudes()[1], ONE);
    }

    #[test]
    fn rejects_unnormalized() {
        let r = StateVector::new(qubits(&["A"]), vec![ONE, ONE]);
        assert!(matches!(r, Err(Error::NotNormalizedState { .. })));
    }

    #[test]
    fn bell_reduction_is_maximally_mixed() {
        let rho = bell().reduced(&["A"]).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn measuring_product_state_drops_impossible_outcome() {
        let s = StateVector::basis(qubits(&["A", "B"]), 1).unwrap();
        let e = s.measure("A").unwrap();
        assert_eq!(e.labels().labels(), &["0"]);
        assert_eq!(e.weights(), &[1.0]);
        assert!((e.states()[0].matrix()[(1, 1)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_measurement_gives_two_branches() {
        let e = bell().measure("A").unwrap();
        assert_eq!(e.weights().len(), 2);
        assert!(e.weights().iter().all(|w| (w - 0.5).abs() < 1e-15));
    }

    #[test]
    fn local_hadamard() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = CMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        let s = StateVector::basis(qubits(&["A", "B"]), 0)
            .unwrap()
            .apply_local("A", &had)
            .unwrap();
        assert!((s.amplitudes()[0].re - h).abs() < 1e-15);
        assert!((s.amplitudes()[2].re - h).abs() < 1e-15);
    }
}
