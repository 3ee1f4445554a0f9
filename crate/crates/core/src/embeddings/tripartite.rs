use serde::Serialize;

use super::general::{check_reproduces, leakage_general, measured_table, with_work_registers};
use super::regular::LeakageReport;
use crate::probdist::{conditional_entropy, conditional_entropy_x_given_y, Alphabet, JointDistribution};
use crate::quantum::{
    hermitian_eigen, spectral_entropy, CMatrix, DensityMatrix, RegisterLayout, StateVector, C64,
};
use crate::{Error, Result};

/// Eigenvalues of `ρ_E` closer than this are reported as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// A pure state on `[E, A, A′, B, B′]` whose `A`, `B` measurement reproduces
/// `source`.
#[derive(Debug, Clone)]
pub struct TripartiteState {
    source: JointDistribution,
    state: StateVector,
}

impl TripartiteState {
    /// Missing `A′`/`B′` registers are added with dimension 1.
    pub fn new(source: JointDistribution, state: StateVector) -> Result<Self> {
        if !state.layout().contains("E") {
            return Err(Error::LayoutMismatch("tripartite states need an E register".into()));
        }
        let state = with_work_registers(&state)?;
        check_reproduces(&source, &state)?;
        Ok(Self { source, state })
    }

    /// Takes the source distribution from the state itself, with indexed
    /// labels. Zero-probability outcomes of `A` or `B` are not allowed.
    pub fn from_state(state: StateVector) -> Result<Self> {
        let padded = with_work_registers(&state)?;
        let nx = padded.layout().register_dim("A")?;
        let ny = padded.layout().register_dim("B")?;
        let table = measured_table(&padded.reduced(&["A", "B"])?);
        let source = JointDistribution::from_flat(Alphabet::indexed(nx)?, Alphabet::indexed(ny)?, table)?;
        if source.nx() != nx || source.ny() != ny {
            return Err(Error::LayoutMismatch(
                "some outcome of A or B has probability zero".into(),
            ));
        }
        Self::new(source, padded)
    }

    pub fn source(&self) -> &JointDistribution {
        &self.source
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// `ρ_{AA′BB′} = tr_E |ψ⟩⟨ψ|`.
    pub fn without_environment(&self) -> Result<DensityMatrix> {
        self.state.reduced(&["A", "A'", "B", "B'"])
    }
}

/// Leakage of the `E`-traced state. The two directions need not agree.
pub fn tripartite_leakage(t: &TripartiteState) -> Result<LeakageReport> {
    leakage_general(&t.without_environment()?)
}

/// `Σ √P(x,y) |xy⟩_E |x⟩_A |y⟩_B`, with `E` indexed by support pairs.
pub fn ideal_functionality_state(p: &JointDistribution) -> TripartiteState {
    let support = p.support();
    let (nx, ny) = (p.nx(), p.ny());
    let layout = RegisterLayout::new([("E", support.len()), ("A", nx), ("A'", 1), ("B", ny), ("B'", 1)])
        .expect("valid layout");
    let mut amps = vec![C64::new(0.0, 0.0); layout.dim()];
    for (k, &(x, y)) in support.iter().enumerate() {
        amps[layout.index(&[k, x, 0, y, 0])] = C64::new(p.p(x, y).sqrt(), 0.0);
    }
    let state = StateVector::normalized(layout, amps).expect("nonzero state");
    TripartiteState::new(p.clone(), state).expect("reproduces its source")
}

/// Conditional entropies of the environment's Schmidt-basis outcome `W`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvironmentMonotones {
    pub s_w_given_x_aprime: f64,
    pub s_w_given_y_bprime: f64,
    pub h_y_given_x: f64,
    pub h_x_given_y: f64,
    /// `ρ_E` has a repeated nonzero eigenvalue, so the basis is not unique.
    pub degenerate_schmidt: bool,
}

impl EnvironmentMonotones {
    /// `S(W|XA′) ≥ H(Y|X)` and `S(W|YB′) ≥ H(X|Y)` within `tol`.
    pub fn inequalities_hold(&self, tol: f64) -> bool {
        self.s_w_given_x_aprime >= self.h_y_given_x - tol
            && self.s_w_given_y_bprime >= self.h_x_given_y - tol
    }
}

/// Projects `E` onto each eigenvector of `ρ_E`: `|ψ_w⟩ = (⟨e_w| ⊗ I)|ψ⟩`,
/// unnormalized, on `[A, A′, B, B′]`.
fn environment_branches(t: &TripartiteState) -> Result<(Vec<StateVector>, bool)> {
    let (_, rest, m) = t.state.coefficient_matrix(&["E"])?;
    let rho_e = crate::quantum::gram(&m);
    let eig = hermitian_eigen(&rho_e, true)?;
    let positive: Vec<f64> = eig.values.iter().copied().filter(|&v| v > 1e-12).collect();
    let degenerate = positive
        .windows(2)
        .any(|w| (w[0] - w[1]).abs() < DEGENERACY_TOLERANCE);
    let v = eig.vectors.as_ref().expect("vectors requested");
    let branches = (0..m.rows())
        .filter(|&k| eig.values[k] > 1e-15)
        .map(|k| {
            let amps: Vec<C64> = (0..m.cols())
                .map(|c| (0..m.rows()).map(|e| v[(e, k)].conj() * m[(e, c)]).sum())
                .collect();
            StateVector::from_parts(rest.clone(), amps)
        })
        .collect();
    Ok((branches, degenerate))
}

/// Entropy of a block-diagonal operator given its (unnormalized) blocks.
fn block_entropy(blocks: &[CMatrix]) -> Result<f64> {
    let mut spectrum = Vec::new();
    for b in blocks {
        spectrum.extend(crate::quantum::psd_spectrum(b)?);
    }
    Ok(spectral_entropy(&spectrum))
}

/// `S(W | X V)` where `X` is the dephased `measured` register and `V` the
/// work register on the same side.
fn conditional_w_entropy(branches: &[StateVector], measured: &str, work: &str) -> Result<f64> {
    let mut blocks = Vec::with_capacity(branches.len());
    let mut total: Option<CMatrix> = None;
    for b in branches {
        let block = b.reduced(&[measured, work])?.dephase(measured)?;
        total = Some(match total {
            None => block.matrix().clone(),
            Some(t) => &t + block.matrix(),
        });
        blocks.push(block.matrix().clone());
    }
    let joint = block_entropy(&blocks)?;
    let marginal = block_entropy(&[total.expect("at least one branch")])?;
    Ok(joint - marginal)
}

/// `S(W|XA′)`, `S(W|YB′)`, `H(Y|X)` and `H(X|Y)`, with `W` the outcome of
/// measuring `E` in the eigenbasis of `ρ_E` returned by the eigensolver.
pub fn environment_monotones(t: &TripartiteState) -> Result<EnvironmentMonotones> {
    let (branches, degenerate_schmidt) = environment_branches(t)?;
    Ok(EnvironmentMonotones {
        s_w_given_x_aprime: conditional_w_entropy(&branches, "A", "A'")?,
        s_w_given_y_bprime: conditional_w_entropy(&branches, "B", "B'")?,
        h_y_given_x: conditional_entropy(&t.source),
        h_x_given_y: conditional_entropy_x_given_y(&t.source),
        degenerate_schmidt,
    })
}
