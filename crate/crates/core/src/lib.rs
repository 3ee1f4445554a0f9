//! Leakage of quantum embeddings of classical two-party primitives.
//!
//! A primitive is a joint distribution `P_{X,Y}` of Alice's output `X` and
//! Bob's output `Y`. An embedding is a pure state whose computational-basis
//! measurement reproduces `P`; its leakage is the extra information the
//! parties' quantum registers carry about each other's outputs beyond
//! `I(X;Y)`.
//!
//! - [`probdist`]: classical entropies, dependent parts, connected components.
//! - [`quantum`]: dense states, partial traces, Hermitian spectra, POVMs.
//! - [`embeddings`]: regular, general and tripartite embeddings and their leakage.
//! - [`primitives`]: the ROT, OT, SAND and noisy-OT catalog with closed forms.
//! - [`optimize`]: multi-start minimization of leakage over phase functions.
//! - [`attacks`]: explicit POVM attacks and the average-encoding bound.
//! - [`suites`]: seeded randomized property suites.

#![forbid(unsafe_code)]

pub mod attacks;
pub mod embeddings;
mod error;
pub mod optimize;
pub mod primitives;
pub mod probdist;
pub mod quantum;
pub mod suites;

pub use error::{Error, Result};

/// Tolerance used for classical normalization checks.
pub const PROB_TOLERANCE: f64 = 1e-12;
