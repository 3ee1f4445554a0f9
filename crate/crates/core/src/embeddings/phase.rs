use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::probdist::JointDistribution;
use crate::{Error, Result};

/// Folds an angle into `[0, 2π)`.
pub fn fold_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A phase function `θ(x, y)` on the support of a distribution, stored in
/// support order (row-major over `(x, y)`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseAssignment {
    support: Vec<(usize, usize)>,
    theta: Vec<f64>,
}

impl PhaseAssignment {
    /// `θ ≡ 0`.
    pub fn zeros(p: &JointDistribution) -> Self {
        let support = p.support();
        let theta = vec![0.0; support.len()];
        Self { support, theta }
    }

    /// Phases given in support order.
    pub fn from_vec(p: &JointDistribution, theta: Vec<f64>) -> Result<Self> {
        let support = p.support();
        if theta.len() != support.len() {
            return Err(Error::PhaseKeyMismatch(format!(
                "expected {} phases for the support, found {}",
                support.len(),
                theta.len()
            )));
        }
        Ok(Self {
            support,
            theta: theta.into_iter().map(fold_angle).collect(),
        })
    }

    /// Phases keyed by `(x, y)` index pairs; keys must be exactly the support.
    pub fn from_pairs(p: &JointDistribution, pairs: &[((usize, usize), f64)]) -> Result<Self> {
        let support = p.support();
        let mut theta = vec![f64::NAN; support.len()];
        for &(key, value) in pairs {
            let slot = support.binary_search(&key).map_err(|_| {
                Error::PhaseKeyMismatch(format!("({}, {}) is outside the support", key.0, key.1))
            })?;
            theta[slot] = fold_angle(value);
        }
        if let Some(missing) = theta.iter().position(|t| t.is_nan()) {
            let (x, y) = support[missing];
            return Err(Error::PhaseKeyMismatch(format!("no phase for ({x}, {y})")));
        }
        Ok(Self { support, theta })
    }

    pub fn from_fn(p: &JointDistribution, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let support = p.support();
        let theta = support.iter().map(|&(x, y)| fold_angle(f(x, y))).collect();
        Self { support, theta }
    }

    pub fn support(&self) -> &[(usize, usize)] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> Option<f64> {
        self.support
            .binary_search(&(x, y))
            .ok()
            .map(|i| self.theta[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.support.iter().copied().zip(self.theta.iter().copied())
    }

    pub(crate) fn matches(&self, p: &JointDistribution) -> Result<()> {
        if self.support != p.support() {
            return Err(Error::PhaseKeyMismatch(
                "phase keys differ from the distribution's support".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probdist::Alphabet;

    fn diag() -> JointDistribution {
        JointDistribution::new(
            Alphabet::indexed(2).unwrap(),
            Alphabet::indexed(2).unwrap(),
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
        )
        .unwrap()
    }

    #[test]
    fn folds_into_range() {
        assert_eq!(fold_angle(-1e-18), 0.0);
        assert!((fold_angle(-1.0) - (TAU - 1.0)).abs() < 1e-15);
        assert!((fold_angle(7.0) - (7.0 - TAU)).abs() < 1e-15);
    }

    #[test]
    fn keys_must_match_support() {
        let p = diag();
        assert!(PhaseAssignment::from_pairs(&p, &[((0, 0), 1.0), ((1, 1), 2.0)]).is_ok());
        assert!(matches!(
            PhaseAssignment::from_pairs(&p, &[((0, 1), 1.0)]),
            Err(Error::PhaseKeyMismatch(_))
        ));
        assert!(matches!(
            PhaseAssignment::from_pairs(&p, &[((0, 0), 1.0)]),
            Err(Error::PhaseKeyMismatch(_))
        ));
        assert!(PhaseAssignment::from_vec(&p, vec![0.0]).is_err());
    }
}
