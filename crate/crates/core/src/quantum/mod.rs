//! Dense complex linear algebra on small multi-register Hilbert spaces.

mod density;
mod eigen;
mod ensemble;
mod layout;
mod matrix;
mod povm;
pub mod random;
mod state;

pub use density::{conditional_vn_entropy, trace_norm, DensityMatrix, TRACE_TOLERANCE};
pub use eigen::{
    hermitian_eigen, hermitian_function, psd_spectrum, psd_sqrt, spectral_entropy, Eigen,
    CLAMP_WINDOW, HERMITIAN_TOLERANCE, MAX_DIMENSION, OFF_DIAGONAL_TOLERANCE,
};
pub use ensemble::CqEnsemble;
pub use layout::{RegisterLayout, CANONICAL_ORDER};
pub use matrix::{cogram, gram, inner, kron_vec, norm, CMatrix, C64};
pub use povm::{Povm, PovmOutcome};
pub use state::{StateVector, NORM_TOLERANCE};

use crate::Result;

/// Descending clamped spectrum of a density matrix.
pub fn eigenvalues_hermitian(rho: &DensityMatrix) -> Result<Vec<f64>> {
    rho.eigenvalues()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    rho.entropy()
}

pub fn partial_trace(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

pub fn measure_subsystem(psi: &StateVector, register: &str) -> Result<CqEnsemble> {
    psi.measure(register)
}

pub fn holevo_information(e: &CqEnsemble) -> Result<f64> {
    e.holevo_information()
}

pub fn apply_povm(povm: &Povm, rho: &DensityMatrix) -> Result<Vec<PovmOutcome>> {
    povm.apply(rho)
}
