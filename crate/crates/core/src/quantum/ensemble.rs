use super::density::DensityMatrix;
use super::layout::RegisterLayout;
use super::matrix::CMatrix;
use crate::probdist::{entropy_unchecked, Alphabet};
use crate::{Error, Result};

/// A classical-quantum ensemble `{(p_x, ρ_x)}` over labeled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct CqEnsemble {
    labels: Alphabet,
    weights: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl CqEnsemble {
    pub fn new(labels: Alphabet, weights: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            let (index, &value) = weights
                .iter()
                .enumerate()
                .find(|(_, w)| !w.is_finite() || **w < 0.0)
                .unwrap();
            return Err(Error::NegativeProbability { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { sum });
        }
        Self::from_parts(labels, weights, states)
    }

    pub(crate) fn from_parts(
        labels: Alphabet,
        weights: Vec<f64>,
        states: Vec<DensityMatrix>,
    ) -> Result<Self> {
        if labels.len() != weights.len() || weights.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: states.len(),
            });
        }
        if let Some(first) = states.first() {
            if let Some(bad) = states.iter().find(|s| s.layout() != first.layout()) {
                return Err(Error::LayoutMismatch(format!(
                    "ensemble states on {:?} and {:?}",
                    first.layout().names(),
                    bad.layout().names()
                )));
            }
        }
        Ok(Self {
            labels,
            weights,
            states,
        })
    }

    pub fn labels(&self) -> &Alphabet {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn layout(&self) -> &RegisterLayout {
        self.states[0].layout()
    }

    /// `Σ_x p_x ρ_x`.
    pub fn average_state(&self) -> DensityMatrix {
        let d = self.states[0].dim();
        let mut m = CMatrix::zeros(d, d);
        for (w, s) in self.weights.iter().zip(&self.states) {
            m = &m + &s.matrix().scale_real(*w);
        }
        DensityMatrix::from_parts(self.layout().clone(), m.hermitian_part())
    }

    /// `χ = S(Σ p_x ρ_x) − Σ p_x S(ρ_x)`.
    pub fn holevo_information(&self) -> Result<f64> {
        let mut chi = self.average_state().entropy()?;
        for (w, s) in self.weights.iter().zip(&self.states) {
            chi -= w * s.entropy()?;
        }
        Ok(chi)
    }

    /// Joint outcome distribution `P(x, m)` when every `ρ_x` is measured in the
    /// computational basis; indexed `[x][m]`.
    pub fn computational_outcomes(&self) -> Vec<Vec<f64>> {
        self.weights
            .iter()
            .zip(&self.states)
            .map(|(w, s)| (0..s.dim()).map(|i| w * s.matrix()[(i, i)].re.max(0.0)).collect())
            .collect()
    }

    /// Mutual information between the label and a computational-basis
    /// measurement of the state.
    pub fn computational_accessible_information(&self) -> f64 {
        let joint = self.computational_outcomes();
        let flat: Vec<f64> = joint.iter().flatten().copied().collect();
        let m = joint[0].len();
        let outcome: Vec<f64> = (0..m).map(|j| joint.iter().map(|r| r[j]).sum()).collect();
        entropy_unchecked(&self.weights) + entropy_unchecked(&outcome) - entropy_unchecked(&flat)
    }

    /// The block-diagonal cq-state `Σ_x p_x |x⟩⟨x| ⊗ ρ_x` with the label
    /// register named `label_register` in front.
    pub fn cq_state(&self, label_register: &str) -> Result<DensityMatrix> {
        let n = self.weights.len();
        let d = self.states[0].dim();
        let layout =
            RegisterLayout::single(label_register, n)?.concat(self.layout())?;
        let mut m = CMatrix::zeros(n * d, n * d);
        for (x, (w, s)) in self.weights.iter().zip(&self.states).enumerate() {
            for r in 0..d {
                for c in 0..d {
                    m[(x * d + r, x * d + c)] = s.matrix()[(r, c)] * *w;
                }
            }
        }
        Ok(DensityMatrix::from_parts(layout, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_state(i: usize) -> DensityMatrix {
        let mut d = [0.0, 0.0];
        d[i] = 1.0;
        DensityMatrix::new(RegisterLayout::single("R", 2).unwrap(), CMatrix::diagonal(&d)).unwrap()
    }

    #[test]
    fn orthogonal_encoding_carries_one_bit() {
        let e = CqEnsemble::new(
            Alphabet::indexed(2).unwrap(),
            vec![0.5, 0.5],
            vec![basis_state(0), basis_state(1)],
        )
        .unwrap();
        assert!((e.holevo_information().unwrap() - 1.0).abs() < 1e-12);
        assert!((e.computational_accessible_information() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_states_carry_nothing() {
        let e = CqEnsemble::new(
            Alphabet::indexed(2).unwrap(),
            vec![0.3, 0.7],
            vec![basis_state(0), basis_state(0)],
        )
        .unwrap();
        assert!(e.holevo_information().unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_weights() {
        let r = CqEnsemble::new(Alphabet::indexed(1).unwrap(), vec![0.5], vec![basis_state(0)]);
        assert!(matches!(r, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn cq_state_has_label_entropy() {
        let e = CqEnsemble::new(
            Alphabet::indexed(2).unwrap(),
            vec![0.5, 0.5],
            vec![basis_state(0), basis_state(0)],
        )
        .unwrap();
        let cq = e.cq_state("X").unwrap();
        assert!((cq.entropy().unwrap() - 1.0).abs() < 1e-12);
    }
}
