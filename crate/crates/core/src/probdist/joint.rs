use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use crate::{Error, Result, PROB_TOLERANCE};

/// On-disk form: `{"x": [labels], "y": [labels], "p": [[row-major]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawJoint {
    x: Vec<String>,
    y: Vec<String>,
    p: Vec<Vec<f64>>,
}

/// A finite joint distribution `P_{X,Y}` with strictly positive marginals.
///
/// Symbols with zero marginal probability are removed at construction; the
/// removed labels are kept in [`JointDistribution::pruned`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJoint", into = "RawJoint")]
pub struct JointDistribution {
    x: Alphabet,
    y: Alphabet,
    probs: Vec<f64>,
    pruned: Vec<String>,
}

impl JointDistribution {
    /// Builds a distribution from a table indexed `[x][y]`.
    pub fn new(x: Alphabet, y: Alphabet, table: Vec<Vec<f64>>) -> Result<Self> {
        if table.len() != x.len() {
            return Err(Error::RowCount {
                expected: x.len(),
                found: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(x.len() * y.len());
        for (row, values) in table.into_iter().enumerate() {
            if values.len() != y.len() {
                return Err(Error::RaggedRow {
                    row,
                    expected: y.len(),
                    found: values.len(),
                });
            }
            flat.extend(values);
        }
        Self::from_flat(x, y, flat)
    }

    /// Builds a distribution from a row-major flat table.
    pub fn from_flat(x: Alphabet, y: Alphabet, probs: Vec<f64>) -> Result<Self> {
        let (nx, ny) = (x.len(), y.len());
        if probs.len() != nx * ny {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                found: probs.len(),
            });
        }
        for (k, &v) in probs.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidEntry {
                    row: k / ny,
                    col: k % ny,
                    value: v,
                });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }

        let row_mass = |i: usize| probs[i * ny..(i + 1) * ny].iter().sum::<f64>();
        let col_mass = |j: usize| (0..nx).map(|i| probs[i * ny + j]).sum::<f64>();
        let keep_x: Vec<usize> = (0..nx).filter(|&i| row_mass(i) > 0.0).collect();
        let keep_y: Vec<usize> = (0..ny).filter(|&j| col_mass(j) > 0.0).collect();
        if keep_x.len() == nx && keep_y.len() == ny {
            return Ok(Self {
                x,
                y,
                probs,
                pruned: Vec::new(),
            });
        }

        let mut pruned = Vec::new();
        for i in (0..nx).filter(|i| !keep_x.contains(i)) {
            pruned.push(format!("x:{}", x.label(i)));
        }
        for j in (0..ny).filter(|j| !keep_y.contains(j)) {
            pruned.push(format!("y:{}", y.label(j)));
        }
        log::warn!("dropping zero-marginal symbols: {}", pruned.join(", "));
        let mut kept = Vec::with_capacity(keep_x.len() * keep_y.len());
        for &i in &keep_x {
            for &j in &keep_y {
                kept.push(probs[i * ny + j]);
            }
        }
        Ok(Self {
            x: x.subset(&keep_x),
            y: y.subset(&keep_y),
            probs: kept,
            pruned,
        })
    }

    /// Product of two marginals.
    pub fn product(x: Alphabet, px: &[f64], y: Alphabet, py: &[f64]) -> Result<Self> {
        let probs = px
            .iter()
            .flat_map(|&a| py.iter().map(move |&b| a * b))
            .collect();
        Self::from_flat(x, y, probs)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("distribution serializes")
    }

    pub fn x_alphabet(&self) -> &Alphabet {
        &self.x
    }

    pub fn y_alphabet(&self) -> &Alphabet {
        &self.y
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    /// Labels removed at construction because their marginal was zero.
    pub fn pruned(&self) -> &[String] {
        &self.pruned
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.ny() + y]
    }

    /// Row-major probabilities.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn row(&self, x: usize) -> &[f64] {
        let ny = self.ny();
        &self.probs[x * ny..(x + 1) * ny]
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.nx()).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.ny()];
        for i in 0..self.nx() {
            for (o, v) in out.iter_mut().zip(self.row(i)) {
                *o += v;
            }
        }
        out
    }

    /// `P_{Y|X=x}`.
    pub fn conditional_y_given(&self, x: usize) -> Vec<f64> {
        let row = self.row(x);
        let mass: f64 = row.iter().sum();
        row.iter().map(|v| v / mass).collect()
    }

    /// Pairs `(x, y)` with positive probability, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let ny = self.ny();
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(k, _)| (k / ny, k % ny))
            .collect()
    }

    /// The same distribution with the roles of X and Y swapped.
    pub fn transpose(&self) -> Self {
        let (nx, ny) = (self.nx(), self.ny());
        let mut probs = vec![0.0; nx * ny];
        for i in 0..nx {
            for j in 0..ny {
                probs[j * nx + i] = self.p(i, j);
            }
        }
        Self {
            x: self.y.clone(),
            y: self.x.clone(),
            probs,
            pruned: self.pruned.clone(),
        }
    }

    /// Total-variation distance between two distributions on the same alphabets.
    pub fn total_variation(&self, other: &Self) -> Option<f64> {
        if self.x != other.x || self.y != other.y {
            return None;
        }
        Some(
            0.5 * self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>(),
        )
    }
}

impl TryFrom<RawJoint> for JointDistribution {
    type Error = Error;

    fn try_from(raw: RawJoint) -> Result<Self> {
        let x = Alphabet::new(raw.x)?;
        let y = Alphabet::new(raw.y)?;
        Self::new(x, y, raw.p)
    }
}

impl From<JointDistribution> for RawJoint {
    fn from(d: JointDistribution) -> Self {
        let p = (0..d.nx()).map(|i| d.row(i).to_vec()).collect();
        RawJoint {
            x: d.x.into(),
            y: d.y.into(),
            p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    #[test]
    fn rejects_negative_entries_with_position() {
        let err = JointDistribution::new(bits(), bits(), vec![vec![0.5, 0.6], vec![-0.1, 0.0]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::InvalidEntry {
                row: 1,
                col: 0,
                value: -0.1
            }
        );
    }

    #[test]
    fn rejects_unnormalized() {
        let err = JointDistribution::new(bits(), bits(), vec![vec![0.5, 0.0], vec![0.0, 0.4]])
            .unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn rejects_ragged_rows() {
        let err =
            JointDistribution::new(bits(), bits(), vec![vec![0.5, 0.5], vec![0.0]]).unwrap_err();
        assert_eq!(
            err,
            Error::RaggedRow {
                row: 1,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn prunes_zero_marginals() {
        let x = Alphabet::new(["a", "b", "c"]).unwrap();
        let p = JointDistribution::new(
            x,
            bits(),
            vec![vec![0.5, 0.0], vec![0.0, 0.0], vec![0.0, 0.5]],
        )
        .unwrap();
        assert_eq!(p.nx(), 2);
        assert_eq!(p.x_alphabet().labels(), &["a", "c"]);
        assert_eq!(p.pruned(), &["x:b".to_string()]);
    }

    #[test]
    fn json_format() {
        let text = r#"{"x": ["0", "1"], "y": ["0", "_bot"], "p": [[0.25, 0.25], [0.0, 0.5]]}"#;
        let p = JointDistribution::from_json(text).unwrap();
        assert_eq!(p.p(1, 1), 0.5);
        let back = JointDistribution::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn json_validation_error_mentions_position() {
        let text = r#"{"x": ["0", "1"], "y": ["0", "1"], "p": [[0.5, 0.5], [0.5, -0.5]]}"#;
        let err = JointDistribution::from_json(text).unwrap_err().to_string();
        assert!(err.contains("row 1, col 1"), "{err}");
    }

    #[test]
    fn transpose_swaps_roles() {
        let x = Alphabet::new(["a", "b"]).unwrap();
        let p = JointDistribution::new(x, bits(), vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let t = p.transpose();
        assert_eq!(t.p(1, 0), 0.2);
        assert_eq!(t.x_alphabet(), &bits());
    }
}
