use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::joint::JointDistribution;
use crate::{Error, Result};

/// One possible output `(w, z)` of a two-party function and its probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionOutcome {
    pub w: String,
    pub z: String,
    pub prob: f64,
}

/// A (possibly randomized) two-party function `f: A × B → W × Z` given as a
/// truth table indexed `[a][b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionTable {
    pub a: Alphabet,
    pub b: Alphabet,
    pub cells: Vec<Vec<Vec<FunctionOutcome>>>,
}

impl FunctionTable {
    /// Builds a deterministic table from `f(a_label, b_label) -> (w, z)`.
    pub fn deterministic<F>(a: Alphabet, b: Alphabet, f: F) -> Self
    where
        F: Fn(&str, &str) -> (String, String),
    {
        let cells = a
            .labels()
            .iter()
            .map(|al| {
                b.labels()
                    .iter()
                    .map(|bl| {
                        let (w, z) = f(al, bl);
                        vec![FunctionOutcome { w, z, prob: 1.0 }]
                    })
                    .collect()
            })
            .collect();
        Self { a, b, cells }
    }

    fn validate(&self) -> Result<()> {
        if self.cells.len() != self.a.len() {
            return Err(Error::MalformedTable(format!(
                "expected {} rows, found {}",
                self.a.len(),
                self.cells.len()
            )));
        }
        for (i, row) in self.cells.iter().enumerate() {
            if row.len() != self.b.len() {
                return Err(Error::MalformedTable(format!(
                    "row {i}: expected {} cells, found {}",
                    self.b.len(),
                    row.len()
                )));
            }
            for (j, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(Error::MalformedTable(format!("cell ({i}, {j}) is empty")));
                }
                if cell.iter().any(|o| !o.prob.is_finite() || o.prob < 0.0) {
                    return Err(Error::MalformedTable(format!(
                        "cell ({i}, {j}) has an invalid probability"
                    )));
                }
                let sum: f64 = cell.iter().map(|o| o.prob).sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(Error::MalformedTable(format!(
                        "cell ({i}, {j}) sums to {sum}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `P((a,w),(b,z)) = Pr[f(a,b) = (w,z)] / (|A|·|B|)` with uniform inputs.
///
/// Labels are `"a,w"` and `"b,z"`, sorted, restricted to pairs that occur
/// with positive probability.
pub fn randomize_function(f: &FunctionTable) -> Result<JointDistribution> {
    f.validate()?;
    let scale = 1.0 / (f.a.len() * f.b.len()) as f64;
    let mut mass: BTreeMap<(String, String), f64> = BTreeMap::new();
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for (i, row) in f.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for o in cell.iter().filter(|o| o.prob > 0.0) {
                let x = format!("{},{}", f.a.label(i), o.w);
                let y = format!("{},{}", f.b.label(j), o.z);
                xs.insert(x.clone());
                ys.insert(y.clone());
                *mass.entry((x, y)).or_insert(0.0) += o.prob * scale;
            }
        }
    }
    let x = Alphabet::new(xs)?;
    let y = Alphabet::new(ys)?;
    let mut table = vec![vec![0.0; y.len()]; x.len()];
    for ((xl, yl), v) in mass {
        let (xi, yi) = (x.index_of(&xl).unwrap(), y.index_of(&yl).unwrap());
        table[xi][yi] = v;
    }
    JointDistribution::new(x, y, table)
}
