use serde::Serialize;

use super::regular::{LeakageReport, RegularEmbedding};
use crate::probdist::{entropy_unchecked, JointDistribution};
use crate::quantum::{DensityMatrix, RegisterLayout, StateVector};
use crate::{Error, Result};

/// Default tolerance of [`strict_correctness_check`].
pub const STRICTNESS_TOLERANCE: f64 = 1e-9;
/// Allowed total-variation gap between the measured and the source distribution.
pub const REPRODUCTION_TOLERANCE: f64 = 1e-9;

pub(crate) const WORK_LAYOUT: [&str; 4] = ["A", "A'", "B", "B'"];

/// Inserts missing `A′`/`B′` registers of dimension 1. The amplitudes are
/// unchanged because a dimension-1 register does not alter the indexing.
pub fn with_work_registers(state: &StateVector) -> Result<StateVector> {
    let layout = state.layout();
    let mut regs: Vec<(String, usize)> = Vec::new();
    for name in ["E", "A", "A'", "B", "B'"] {
        if let Ok(d) = layout.register_dim(name) {
            regs.push((name.to_string(), d));
        } else if name != "E" {
            regs.push((name.to_string(), 1));
        }
    }
    if layout.names().iter().any(|n| !["E", "A", "A'", "B", "B'"].contains(n)) {
        return Err(Error::LayoutMismatch(format!(
            "unexpected registers {:?}",
            layout.names()
        )));
    }
    StateVector::new(RegisterLayout::new(regs)?, state.amplitudes().to_vec())
}

fn require_registers(layout: &RegisterLayout, names: &[&str]) -> Result<()> {
    match names.iter().find(|n| !layout.contains(n)) {
        Some(missing) => Err(Error::LayoutMismatch(format!(
            "register {missing} missing from {:?}",
            layout.names()
        ))),
        None => Ok(()),
    }
}

/// The `P_{X,Y}` obtained by measuring `A` and `B`, as a flat `[x][y]` table.
pub(crate) fn measured_table(rho_ab: &DensityMatrix) -> Vec<f64> {
    (0..rho_ab.dim()).map(|i| rho_ab.matrix()[(i, i)].re.max(0.0)).collect()
}

fn mutual_information_of(table: &[f64], nx: usize, ny: usize) -> f64 {
    let px: Vec<f64> = (0..nx).map(|x| table[x * ny..(x + 1) * ny].iter().sum()).collect();
    let py: Vec<f64> = (0..ny).map(|y| (0..nx).map(|x| table[x * ny + y]).sum()).collect();
    (entropy_unchecked(&px) + entropy_unchecked(&py) - entropy_unchecked(table)).max(0.0)
}

/// A pure embedding with work registers on the layout `[A, A′, B, B′]`.
#[derive(Debug, Clone)]
pub struct EmbeddingState {
    source: JointDistribution,
    state: StateVector,
    strictness: StrictnessReport,
}

impl EmbeddingState {
    /// Validates the layout and that measuring `A`, `B` reproduces `source`;
    /// records the outcome of [`strict_correctness_check`].
    pub fn new(source: JointDistribution, state: StateVector) -> Result<Self> {
        let state = with_work_registers(&state)?;
        if state.layout().contains("E") {
            return Err(Error::LayoutMismatch(
                "bipartite embeddings have no E register".into(),
            ));
        }
        check_reproduces(&source, &state)?;
        let strictness = strictness_of(&state.density(), STRICTNESS_TOLERANCE)?;
        Ok(Self {
            source,
            state,
            strictness,
        })
    }

    pub fn from_regular(e: &RegularEmbedding) -> Self {
        Self::new(e.source().clone(), e.state().clone()).expect("regular embeddings are valid")
    }

    pub fn source(&self) -> &JointDistribution {
        &self.source
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Whether the default-tolerance strictness check passed at construction.
    pub fn strictly_correct(&self) -> bool {
        self.strictness.passed
    }

    pub fn strictness(&self) -> &StrictnessReport {
        &self.strictness
    }

    pub fn leakage(&self) -> Result<LeakageReport> {
        leakage_general(&self.state.density())
    }
}

pub(crate) fn check_reproduces(source: &JointDistribution, state: &StateVector) -> Result<()> {
    let (nx, ny) = (source.nx(), source.ny());
    let (da, db) = (state.layout().register_dim("A")?, state.layout().register_dim("B")?);
    if (da, db) != (nx, ny) {
        return Err(Error::LayoutMismatch(format!(
            "A, B have dimensions ({da}, {db}); the distribution needs ({nx}, {ny})"
        )));
    }
    let table = measured_table(&state.reduced(&["A", "B"])?);
    let tv: f64 = 0.5
        * table
            .iter()
            .zip(source.probs())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    if tv > REPRODUCTION_TOLERANCE {
        return Err(Error::DistributionMismatch(tv));
    }
    Ok(())
}

/// Directed leakages of a (possibly mixed) state on `[A, A′, B, B′]`.
///
/// `S(X;BB′)` is the Holevo quantity of the ensemble left on `BB′` after
/// measuring `A` (with `A′` traced out); `S(AA′;Y)` is the mirror image.
/// `I(X;Y)` is read off the diagonal of `ρ_AB`.
pub fn leakage_general(rho: &DensityMatrix) -> Result<LeakageReport> {
    require_registers(rho.layout(), &WORK_LAYOUT)?;
    if rho.layout().len() != 4 {
        return Err(Error::LayoutMismatch(format!(
            "expected registers A, A', B, B', found {:?}",
            rho.layout().names()
        )));
    }
    let nx = rho.layout().register_dim("A")?;
    let ny = rho.layout().register_dim("B")?;
    let table = measured_table(&rho.partial_trace(&["A", "B"])?);
    let i = mutual_information_of(&table, nx, ny);
    let s_x_bob = rho
        .partial_trace(&["A", "B", "B'"])?
        .measure("A")?
        .holevo_information()?;
    let s_alice_y = rho
        .partial_trace(&["A", "A'", "B"])?
        .measure("B")?
        .holevo_information()?;
    Ok(LeakageReport::from_parts(s_x_bob, s_alice_y, i))
}

/// Residuals of the two Markov conditions `S(X;YB′) = I(X;Y)` and
/// `S(XA′;Y) = I(X;Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrictnessReport {
    pub passed: bool,
    pub s_x_y_bprime: f64,
    pub s_x_aprime_y: f64,
    pub mutual_information: f64,
    /// `|S(X;YB′) − I(X;Y)|`.
    pub residual_bob: f64,
    /// `|S(XA′;Y) − I(X;Y)|`.
    pub residual_alice: f64,
}

fn strictness_of(rho: &DensityMatrix, tol: f64) -> Result<StrictnessReport> {
    let nx = rho.layout().register_dim("A")?;
    let ny = rho.layout().register_dim("B")?;
    let table = measured_table(&rho.partial_trace(&["A", "B"])?);
    let i = mutual_information_of(&table, nx, ny);
    let s_x_y_bprime = rho
        .partial_trace(&["A", "B", "B'"])?
        .dephase("B")?
        .measure("A")?
        .holevo_information()?;
    let s_x_aprime_y = rho
        .partial_trace(&["A", "A'", "B"])?
        .dephase("A")?
        .measure("B")?
        .holevo_information()?;
    let residual_bob = (s_x_y_bprime - i).abs();
    let residual_alice = (s_x_aprime_y - i).abs();
    Ok(StrictnessReport {
        passed: residual_bob < tol && residual_alice < tol,
        s_x_y_bprime,
        s_x_aprime_y,
        mutual_information: i,
        residual_bob,
        residual_alice,
    })
}

pub fn strict_correctness_check(e: &EmbeddingState, tol: f64) -> Result<StrictnessReport> {
    strictness_of(&e.state.density(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::{canonical, leakage_regular};
    use crate::probdist::Alphabet;
    use crate::quantum::C64;

    fn correlated_with_noise() -> JointDistribution {
        JointDistribution::new(
            Alphabet::indexed(2).unwrap(),
            Alphabet::indexed(2).unwrap(),
            vec![vec![0.4, 0.1], vec![0.1, 0.4]],
        )
        .unwrap()
    }

    /// `Σ √P(x,y) |x⟩_A |a′⟩_{A′} |y⟩_B |b′⟩_{B′}` with `b′ = g(x, y)`.
    fn with_bob_register(p: &JointDistribution, g: impl Fn(usize, usize) -> usize) -> StateVector {
        let layout = RegisterLayout::new([("A", 2), ("A'", 1), ("B", 2), ("B'", 2)]).unwrap();
        let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
        for (x, y) in p.support() {
            amps[layout.index(&[x, 0, y, g(x, y)])] = C64::new(p.p(x, y).sqrt(), 0.0);
        }
        StateVector::new(layout, amps).unwrap()
    }

    #[test]
    fn lifted_regular_matches_regular_leakage() {
        let p = correlated_with_noise();
        let e = canonical(&p);
        let lifted = EmbeddingState::from_regular(&e);
        assert!(lifted.strictly_correct());
        let g = lifted.leakage().unwrap();
        let r = leakage_regular(&e).unwrap();
        assert!((g.delta - r.delta).abs() < 1e-12);
        assert!((g.toward_alice - g.toward_bob).abs() < 1e-12);
    }

    #[test]
    fn copy_of_x_on_bob_side_fails() {
        let p = correlated_with_noise();
        let e = EmbeddingState::new(p.clone(), with_bob_register(&p, |x, _| x)).unwrap();
        assert!(!e.strictly_correct());
        let r = strict_correctness_check(&e, STRICTNESS_TOLERANCE).unwrap();
        let h_x_given_y = crate::probdist::conditional_entropy_x_given_y(&p);
        assert!((r.residual_bob - h_x_given_y).abs() < 1e-9);
        assert!(r.residual_alice < 1e-9);
    }

    #[test]
    fn function_of_y_passes() {
        let p = correlated_with_noise();
        let e = EmbeddingState::new(p.clone(), with_bob_register(&p, |_, y| y)).unwrap();
        assert!(e.strictly_correct());
    }

    #[test]
    fn rejects_wrong_distribution() {
        let p = correlated_with_noise();
        let other = JointDistribution::new(
            Alphabet::indexed(2).unwrap(),
            Alphabet::indexed(2).unwrap(),
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
        )
        .unwrap();
        let state = with_bob_register(&p, |_, y| y);
        assert!(matches!(
            EmbeddingState::new(other, state),
            Err(Error::DistributionMismatch(_))
        ));
    }

    #[test]
    fn leakage_general_needs_all_registers() {
        let rho = DensityMatrix::maximally_mixed(RegisterLayout::new([("A", 2), ("B", 2)]).unwrap());
        assert!(matches!(leakage_general(&rho), Err(Error::LayoutMismatch(_))));
    }
}
