//! POVM attacks on regular embeddings and the average-encoding bound.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embeddings::RegularEmbedding;
use crate::probdist::{Alphabet, JointDistribution};
use crate::quantum::{gram, trace_norm, CMatrix, CqEnsemble, DensityMatrix, Povm, RegisterLayout, C64};
use crate::{Error, Result};

/// Label of the inconclusive POVM element.
pub const INCONCLUSIVE: &str = "?";

fn two_qubit_projector(a: [f64; 2], b: [f64; 2]) -> CMatrix {
    let v: Vec<C64> = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
        .iter()
        .map(|&x| C64::new(x, 0.0))
        .collect();
    CMatrix::projector(&v)
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
const PLUS: [f64; 2] = [H, H];
const MINUS: [f64; 2] = [H, -H];

fn with_remainder(conclusive: Vec<(String, CMatrix)>) -> Povm {
    let mut rest = CMatrix::identity(4);
    for (_, e) in &conclusive {
        rest = &rest - e;
    }
    let mut elements = conclusive;
    elements.push((INCONCLUSIVE.to_string(), rest));
    Povm::new(elements).expect("projectors onto orthogonal states complete to a POVM")
}

/// Bob's measurement on `|c⟩|y⟩` revealing `x₀ ⊕ x₁`: `|+−⟩⟨+−|` → 0,
/// `|−−⟩⟨−−|` → 1, the complement is inconclusive.
pub fn bob_xor_povm() -> Povm {
    with_remainder(vec![
        ("0".into(), two_qubit_projector(PLUS, MINUS)),
        ("1".into(), two_qubit_projector(MINUS, MINUS)),
    ])
}

/// Alice's measurement on `|x₀⟩|x₁⟩` revealing `c`: `|−+⟩⟨−+|` → 0,
/// `|+−⟩⟨+−|` → 1, the complement is inconclusive.
pub fn alice_choice_povm() -> Povm {
    with_remainder(vec![
        ("0".into(), two_qubit_projector(MINUS, PLUS)),
        ("1".into(), two_qubit_projector(PLUS, MINUS)),
    ])
}

/// The party holding the measured register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    fn register(self) -> &'static str {
        match self {
            Self::Alice => "A",
            Self::Bob => "B",
        }
    }

    fn other(self) -> &'static str {
        match self {
            Self::Alice => "B",
            Self::Bob => "A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackRow {
    pub label: String,
    pub probability: f64,
    /// The guessed value, `None` for the inconclusive element.
    pub inferred: Option<String>,
    /// Distribution of the target given this outcome (joint with it).
    pub target_joint: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackOutcome {
    pub conclusive_probability: f64,
    /// `Pr[guess correct | conclusive]`; 0 when nothing is conclusive.
    pub conditional_correctness: f64,
    pub outcome_table: Vec<AttackRow>,
}

impl AttackOutcome {
    /// `Pr[conclusive and correct]`.
    pub fn success_probability(&self) -> f64 {
        self.conclusive_probability * self.conditional_correctness
    }
}

/// Exact outcome statistics of measuring one side of a regular embedding
/// with `povm` while the other side is measured in the computational basis.
///
/// `target` maps the other side's outcome label to the value being guessed.
/// Elements labeled [`INCONCLUSIVE`] abstain; every other label is the guess.
pub fn run_povm_attack(
    e: &RegularEmbedding,
    povm: &Povm,
    side: Side,
    target: &dyn Fn(&str) -> String,
) -> Result<AttackOutcome> {
    let register = side.register();
    let dim = e.state().layout().register_dim(register)?;
    if povm.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: povm.dim(),
        });
    }
    let other_labels = match side {
        Side::Alice => e.source().y_alphabet(),
        Side::Bob => e.source().x_alphabet(),
    };
    let branches = e.state().measure_labeled(side.other(), other_labels)?;

    let mut rows = Vec::new();
    let (mut conclusive, mut correct) = (0.0, 0.0);
    for (label, element) in povm.elements() {
        let mut target_joint: BTreeMap<String, f64> = BTreeMap::new();
        let mut probability = 0.0;
        for ((v, w), rho) in branches
            .labels()
            .labels()
            .iter()
            .zip(branches.weights())
            .zip(branches.states())
        {
            let pr = w * (element * rho.matrix()).trace().re.max(0.0);
            probability += pr;
            *target_joint.entry(target(v)).or_insert(0.0) += pr;
        }
        let inferred = (label != INCONCLUSIVE).then(|| label.clone());
        if let Some(guess) = &inferred {
            conclusive += probability;
            correct += target_joint.get(guess).copied().unwrap_or(0.0);
        }
        rows.push(AttackRow {
            label: label.clone(),
            probability,
            inferred,
            target_joint,
        });
    }
    Ok(AttackOutcome {
        conclusive_probability: conclusive,
        conditional_correctness: if conclusive > 1e-15 { correct / conclusive } else { 0.0 },
        outcome_table: rows,
    })
}

/// `tr(E ρ_side)` for every element, computed from the reduced state alone.
pub fn element_probabilities(e: &RegularEmbedding, povm: &Povm, side: Side) -> Result<Vec<f64>> {
    let rho = e.state().reduced(&[side.register()])?;
    Ok(povm
        .elements()
        .iter()
        .map(|(_, el)| (el * rho.matrix()).trace().re)
        .collect())
}

/// Best guess of a target from the attacker's own classical output alone:
/// `Σ_v max_t P(t, v)` with `v` the attacker's output.
pub fn classical_baseline(
    p: &JointDistribution,
    side: Side,
    target: &dyn Fn(&str) -> String,
) -> f64 {
    let mut joint: BTreeMap<(usize, String), f64> = BTreeMap::new();
    for (x, y) in p.support() {
        let (own, other) = match side {
            Side::Alice => (x, p.y_alphabet().label(y)),
            Side::Bob => (y, p.x_alphabet().label(x)),
        };
        *joint.entry((own, target(other))).or_insert(0.0) += p.p(x, y);
    }
    let mut best: BTreeMap<usize, f64> = BTreeMap::new();
    for ((own, _), v) in joint {
        let b = best.entry(own).or_insert(0.0);
        *b = b.max(v);
    }
    best.values().sum()
}

/// Alice's reduced states conditioned on a coarse-graining of Bob's output.
/// `group` maps a y-label to its group label.
pub fn alice_view_given(e: &RegularEmbedding, group: &dyn Fn(&str) -> String) -> Result<CqEnsemble> {
    let m = e.amplitude_matrix();
    let p = e.source();
    let mut columns: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for y in 0..p.ny() {
        columns.entry(group(p.y_alphabet().label(y))).or_default().push(y);
    }
    let layout = RegisterLayout::single("A", p.nx())?;
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for cols in columns.values() {
        let sub = CMatrix::from_fn(p.nx(), cols.len(), |r, c| m[(r, cols[c])]);
        let rho = gram(&sub);
        let w = rho.trace().re;
        weights.push(w);
        states.push(DensityMatrix::new(layout.clone(), rho.scale_real(1.0 / w))?);
    }
    CqEnsemble::new(Alphabet::new(columns.into_keys())?, weights, states)
}

/// `(Σ_x p_x ‖ρ − ρ_x‖₁, √(2 ln 2 · χ))`; the first never exceeds the second.
pub fn average_encoding_gap(e: &CqEnsemble) -> Result<(f64, f64)> {
    let avg = e.average_state();
    let mut lhs = 0.0;
    for (w, s) in e.weights().iter().zip(e.states()) {
        lhs += w * trace_norm(&(avg.matrix() - s.matrix()))?;
    }
    let chi = e.holevo_information()?.max(0.0);
    Ok((lhs, (2.0 * std::f64::consts::LN_2 * chi).sqrt()))
}

/// `x₀ ⊕ x₁` of a two-bit label.
pub fn xor_of_bits(label: &str) -> String {
    let ones = label.chars().filter(|&c| c == '1').count();
    (ones % 2).to_string()
}

/// The choice bit `c` of an OT output label `"c:y"`.
pub fn choice_bit(label: &str) -> String {
    label.split(':').next().unwrap_or(label).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::canonical;
    use crate::primitives::make_ot;

    #[test]
    fn povms_are_complete() {
        for p in [bob_xor_povm(), alice_choice_povm()] {
            let mut sum = CMatrix::zeros(4, 4);
            for (_, e) in p.elements() {
                sum = &sum + e;
            }
            assert!(sum.max_abs_diff(&CMatrix::identity(4)) < 1e-12);
        }
        let a = alice_choice_povm();
        let overlap = a.element("0").unwrap() * a.element("1").unwrap();
        assert!(overlap.frobenius_norm() < 1e-15);
    }

    #[test]
    fn attacks_on_canonical_ot() {
        let e = canonical(&make_ot(1).unwrap().dist);
        let bob = run_povm_attack(&e, &bob_xor_povm(), Side::Bob, &xor_of_bits).unwrap();
        assert!((bob.conclusive_probability - 0.5).abs() < 1e-12);
        assert!((bob.conditional_correctness - 1.0).abs() < 1e-12);
        for row in &bob.outcome_table[..2] {
            assert!((row.probability - 0.25).abs() < 1e-12);
        }
        let alice = run_povm_attack(&e, &alice_choice_povm(), Side::Alice, &choice_bit).unwrap();
        assert!((alice.conclusive_probability - 0.5).abs() < 1e-12);
        assert!((alice.conditional_correctness - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_ways_of_computing_probabilities_agree() {
        let e = canonical(&make_ot(1).unwrap().dist);
        let povm = bob_xor_povm();
        let out = run_povm_attack(&e, &povm, Side::Bob, &xor_of_bits).unwrap();
        let direct = element_probabilities(&e, &povm, Side::Bob).unwrap();
        for (row, d) in out.outcome_table.iter().zip(direct) {
            assert!((row.probability - d).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_povm_is_never_conclusive() {
        let e = canonical(&make_ot(1).unwrap().dist);
        let id = Povm::new(vec![(INCONCLUSIVE.into(), CMatrix::identity(4))]).unwrap();
        let out = run_povm_attack(&e, &id, Side::Bob, &xor_of_bits).unwrap();
        assert_eq!(out.conclusive_probability, 0.0);
    }

    #[test]
    fn average_encoding_examples() {
        let layout = RegisterLayout::single("R", 2).unwrap();
        let zero = DensityMatrix::new(layout.clone(), CMatrix::diagonal(&[1.0, 0.0])).unwrap();
        let one = DensityMatrix::new(layout, CMatrix::diagonal(&[0.0, 1.0])).unwrap();
        let same = CqEnsemble::new(Alphabet::indexed(2).unwrap(), vec![0.5, 0.5], vec![zero.clone(), zero.clone()]).unwrap();
        let (l, r) = average_encoding_gap(&same).unwrap();
        assert!(l.abs() < 1e-12 && r.abs() < 1e-6);
        let orth = CqEnsemble::new(Alphabet::indexed(2).unwrap(), vec![0.5, 0.5], vec![zero, one]).unwrap();
        let (l, r) = average_encoding_gap(&orth).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
        assert!((r - (2.0 * std::f64::consts::LN_2).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn label_helpers() {
        assert_eq!(xor_of_bits("01"), "1");
        assert_eq!(xor_of_bits("11"), "0");
        assert_eq!(choice_bit("1:0"), "1");
    }
}
