use serde::Serialize;

use super::info::{entropy_unchecked, joint_entropy};
use super::joint::JointDistribution;

/// Total-variation tolerance under which two conditionals count as equal.
pub const CONDITIONAL_TOLERANCE: f64 = 1e-9;

/// Threshold for the zero tests in [`is_trivial`].
pub const TRIVIALITY_TOLERANCE: f64 = 1e-9;

/// The dependent part `X↘Y`: `X` with all symbols sharing a conditional
/// distribution `P_{Y|X=x}` merged into one class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DependentPartMap {
    /// Class index of every x-symbol.
    pub source_to_class: Vec<usize>,
    /// Lexicographically smallest x-index of every class.
    pub class_representatives: Vec<usize>,
    /// `P_{X↘Y, Y}`; class labels are the representatives' labels.
    pub collapsed: JointDistribution,
}

impl DependentPartMap {
    pub fn class_count(&self) -> usize {
        self.class_representatives.len()
    }

    /// Members of each class, as x-indices.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in self.source_to_class.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(u, v)| (u - v).abs()).sum::<f64>()
}

/// Groups x-symbols by their conditional distribution over Y.
///
/// Symbols are visited in label order and joined to the first class whose
/// representative lies within [`CONDITIONAL_TOLERANCE`]; classes are numbered
/// in order of their representative's label.
pub fn dependent_part(p: &JointDistribution) -> DependentPartMap {
    let labels = p.x_alphabet();
    let mut order: Vec<usize> = (0..p.nx()).collect();
    order.sort_by(|&a, &b| labels.label(a).cmp(labels.label(b)));

    let conditionals: Vec<Vec<f64>> = (0..p.nx()).map(|x| p.conditional_y_given(x)).collect();
    let mut representatives: Vec<usize> = Vec::new();
    let mut source_to_class = vec![0; p.nx()];
    for &x in &order {
        let found = representatives.iter().position(|&r| {
            total_variation(&conditionals[r], &conditionals[x]) <= CONDITIONAL_TOLERANCE
        });
        source_to_class[x] = match found {
            Some(c) => c,
            None => {
                representatives.push(x);
                representatives.len() - 1
            }
        };
    }

    let ny = p.ny();
    let mut table = vec![vec![0.0; ny]; representatives.len()];
    for x in 0..p.nx() {
        for (acc, v) in table[source_to_class[x]].iter_mut().zip(p.row(x)) {
            *acc += v;
        }
    }
    let collapsed = JointDistribution::new(
        p.x_alphabet().subset(&representatives),
        p.y_alphabet().clone(),
        table,
    )
    .expect("merging rows preserves normalization");

    DependentPartMap {
        source_to_class,
        class_representatives: representatives,
        collapsed,
    }
}

/// `Y↘X`, computed on the transposed distribution. The collapsed table is
/// indexed `[class][x]`.
pub fn dependent_part_of_y(p: &JointDistribution) -> DependentPartMap {
    dependent_part(&p.transpose())
}

/// `P_{X↘Y, Y↘X}`.
pub fn collapse_both(p: &JointDistribution) -> JointDistribution {
    let x_collapsed = dependent_part(p).collapsed;
    dependent_part(&x_collapsed.transpose())
        .collapsed
        .transpose()
}

/// Outcome of the triviality test together with both witness entropies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrivialityReport {
    pub trivial: bool,
    /// `H(X↘Y | Y)`.
    pub h_xdep_given_y: f64,
    /// `H(Y↘X | X)`.
    pub h_ydep_given_x: f64,
    /// Whether both zero tests agree.
    pub consistent: bool,
}

/// A primitive is trivial iff `H(X↘Y|Y) = 0`.
pub fn is_trivial(p: &JointDistribution) -> TrivialityReport {
    let dx = dependent_part(p).collapsed;
    let h_xdep_given_y = (joint_entropy(&dx) - entropy_unchecked(&dx.marginal_y())).max(0.0);
    let dy = dependent_part_of_y(p).collapsed;
    let h_ydep_given_x = (joint_entropy(&dy) - entropy_unchecked(&dy.marginal_y())).max(0.0);
    let trivial = h_xdep_given_y < TRIVIALITY_TOLERANCE;
    TrivialityReport {
        trivial,
        h_xdep_given_y,
        h_ydep_given_x,
        consistent: trivial == (h_ydep_given_x < TRIVIALITY_TOLERANCE),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probdist::info::{conditional_entropy, mutual_information};
    use crate::probdist::Alphabet;

    fn dist(xl: &[&str], yl: &[&str], rows: Vec<Vec<f64>>) -> JointDistribution {
        JointDistribution::new(
            Alphabet::new(xl.iter().copied()).unwrap(),
            Alphabet::new(yl.iter().copied()).unwrap(),
            rows,
        )
        .unwrap()
    }

    #[test]
    fn independent_collapses_to_one_class() {
        let p = dist(
            &["a", "b", "c"],
            &["0", "1"],
            vec![vec![0.1, 0.1], vec![0.2, 0.2], vec![0.2, 0.2]],
        );
        let d = dependent_part(&p);
        assert_eq!(d.class_count(), 1);
        assert_eq!(d.class_representatives, vec![0]);
        assert!(is_trivial(&p).trivial);
    }

    #[test]
    fn distinct_conditionals_give_identity_map() {
        // 1-2 OT: every x = x0x1 has a distinct conditional over (c, x_c).
        let x = ["00", "01", "10", "11"];
        let y = ["0:0", "0:1", "1:0", "1:1"];
        let mut rows = vec![vec![0.0; 4]; 4];
        for (xi, row) in rows.iter_mut().enumerate() {
            let (x0, x1) = (xi >> 1, xi & 1);
            row[x0] = 0.125;
            row[2 + x1] = 0.125;
        }
        let p = dist(&x, &y, rows);
        let d = dependent_part(&p);
        assert_eq!(d.source_to_class, vec![0, 1, 2, 3]);
        assert!(!is_trivial(&p).trivial);
    }

    #[test]
    fn independent_noise_coordinate_is_removed() {
        // X = (X', N) with N a fair coin independent of everything else.
        let p = dist(
            &["0a", "0b", "1a", "1b"],
            &["0", "1"],
            vec![
                vec![0.25, 0.05],
                vec![0.25, 0.05],
                vec![0.05, 0.15],
                vec![0.05, 0.15],
            ],
        );
        let d = dependent_part(&p);
        assert_eq!(d.source_to_class, vec![0, 0, 1, 1]);
        assert_eq!(d.collapsed.x_alphabet().labels(), &["0a", "1a"]);
        assert!((mutual_information(&p) - mutual_information(&d.collapsed)).abs() < 1e-12);
        assert!((conditional_entropy(&p) - conditional_entropy(&d.collapsed)).abs() < 1e-12);
    }

    #[test]
    fn representative_is_smallest_label() {
        let p = dist(
            &["z", "b", "m"],
            &["0", "1"],
            vec![vec![0.2, 0.2], vec![0.1, 0.1], vec![0.3, 0.1]],
        );
        let d = dependent_part(&p);
        assert_eq!(d.class_representatives, vec![1, 2]);
        assert_eq!(d.source_to_class, vec![0, 0, 1]);
    }

    #[test]
    fn equal_outputs_are_trivial() {
        let p = dist(&["0", "1"], &["0", "1"], vec![vec![0.5, 0.0], vec![0.0, 0.5]]);
        let r = is_trivial(&p);
        assert!(r.trivial && r.consistent);
    }
}
