use serde::Serialize;

use super::phase::PhaseAssignment;
use crate::probdist::{mutual_information, JointDistribution};
use crate::quantum::{cogram, gram, psd_spectrum, spectral_entropy, CMatrix, RegisterLayout, StateVector, C64};
use crate::Result;

/// Directed leakages of an embedding and the quantities they come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageReport {
    /// `S(X;BB′) − I(X;Y)`.
    pub toward_bob: f64,
    /// `S(AA′;Y) − I(X;Y)`.
    pub toward_alice: f64,
    /// `max(toward_bob, toward_alice)`.
    pub delta: f64,
    /// `S(X;BB′)`.
    pub s_x_bob: f64,
    /// `S(AA′;Y)`.
    pub s_alice_y: f64,
    pub mutual_information: f64,
}

impl LeakageReport {
    pub(crate) fn from_parts(s_x_bob: f64, s_alice_y: f64, mutual_information: f64) -> Self {
        let toward_bob = s_x_bob - mutual_information;
        let toward_alice = s_alice_y - mutual_information;
        Self {
            toward_bob,
            toward_alice,
            delta: toward_bob.max(toward_alice),
            s_x_bob,
            s_alice_y,
            mutual_information,
        }
    }

    /// `|toward_bob − toward_alice|`.
    pub fn asymmetry(&self) -> f64 {
        (self.toward_bob - self.toward_alice).abs()
    }
}

/// `Σ e^{iθ(x,y)} √P(x,y) |x⟩_A |y⟩_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularEmbedding {
    source: JointDistribution,
    phases: PhaseAssignment,
    state: StateVector,
}

impl RegularEmbedding {
    pub fn source(&self) -> &JointDistribution {
        &self.source
    }

    pub fn phases(&self) -> &PhaseAssignment {
        &self.phases
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// The amplitudes as an `|X| × |Y|` matrix.
    pub fn amplitude_matrix(&self) -> CMatrix {
        let ny = self.source.ny();
        CMatrix::from_vec(self.source.nx(), ny, self.state.amplitudes().to_vec())
            .expect("layout is A x B")
    }
}

pub fn build_regular(p: &JointDistribution, theta: &PhaseAssignment) -> Result<RegularEmbedding> {
    theta.matches(p)?;
    let (nx, ny) = (p.nx(), p.ny());
    let mut amps = vec![C64::new(0.0, 0.0); nx * ny];
    for ((x, y), t) in theta.iter() {
        amps[x * ny + y] = C64::from_polar(p.p(x, y).sqrt(), t);
    }
    let layout = RegisterLayout::new([("A", nx), ("B", ny)])?;
    // The probabilities sum to 1 within 1e-12, so renormalizing is a no-op
    // beyond rounding.
    let state = StateVector::normalized(layout, amps)?;
    Ok(RegularEmbedding {
        source: p.clone(),
        phases: theta.clone(),
        state,
    })
}

/// The embedding with `θ ≡ 0`.
pub fn canonical(p: &JointDistribution) -> RegularEmbedding {
    build_regular(p, &PhaseAssignment::zeros(p)).expect("zero phases match the support")
}

/// Entropy of either reduction of a bipartite pure state given by its
/// coefficient matrix, diagonalizing the smaller Gram matrix.
pub(crate) fn entanglement_entropy(m: &CMatrix) -> Result<f64> {
    let reduced = if m.rows() <= m.cols() { gram(m) } else { cogram(m) };
    Ok(spectral_entropy(&psd_spectrum(&reduced)?))
}

/// `Δ = S(ρ_A) − I(X;Y)` for a regular embedding; both directions coincide.
pub fn leakage_regular(e: &RegularEmbedding) -> Result<LeakageReport> {
    let s = entanglement_entropy(&e.amplitude_matrix())?;
    Ok(LeakageReport::from_parts(s, s, mutual_information(&e.source)))
}
