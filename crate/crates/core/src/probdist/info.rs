//! Shannon quantities in bits, with the convention `0 log 0 = 0`.

use super::joint::JointDistribution;
use crate::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// `-Σ p log₂ p` over a validated probability vector.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    for (index, &value) in dist.iter().enumerate() {
        if value < 0.0 || !value.is_finite() {
            return Err(Error::NegativeProbability { index, value });
        }
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized { sum });
    }
    Ok(entropy_unchecked(dist))
}

/// Entropy of nonnegative weights without normalization checks.
pub(crate) fn entropy_unchecked(dist: &[f64]) -> f64 {
    let h: f64 = dist
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Binary entropy `h(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_unchecked(&[p, 1.0 - p])
}

pub fn joint_entropy(p: &JointDistribution) -> f64 {
    entropy_unchecked(p.probs())
}

pub fn entropy_x(p: &JointDistribution) -> f64 {
    entropy_unchecked(&p.marginal_x())
}

pub fn entropy_y(p: &JointDistribution) -> f64 {
    entropy_unchecked(&p.marginal_y())
}

/// `I(X;Y) = H(X) + H(Y) - H(XY)`.
pub fn mutual_information(p: &JointDistribution) -> f64 {
    (entropy_x(p) + entropy_y(p) - joint_entropy(p)).max(0.0)
}

/// `H(Y|X) = H(XY) - H(X)`.
pub fn conditional_entropy(p: &JointDistribution) -> f64 {
    (joint_entropy(p) - entropy_x(p)).max(0.0)
}

/// `H(X|Y) = H(XY) - H(Y)`.
pub fn conditional_entropy_x_given_y(p: &JointDistribution) -> f64 {
    (joint_entropy(p) - entropy_y(p)).max(0.0)
}
