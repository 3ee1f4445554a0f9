//! Embeddings of primitives and their leakage.
//!
//! Regular embeddings are determined by a phase function on the support of
//! `P_{X,Y}`. General embeddings add work registers `A′`, `B′`; tripartite
//! embeddings add an environment `E`.

mod free;
mod general;
mod phase;
mod regular;
mod tripartite;

use serde::{Deserialize, Serialize};

pub use free::{free_phase_coordinates, FreePhases};
pub use general::{
    leakage_general, strict_correctness_check, with_work_registers, EmbeddingState,
    StrictnessReport, REPRODUCTION_TOLERANCE, STRICTNESS_TOLERANCE,
};
pub use phase::{fold_angle, PhaseAssignment};
pub use regular::{build_regular, canonical, leakage_regular, LeakageReport, RegularEmbedding};
pub(crate) use regular::entanglement_entropy;
pub use tripartite::{
    environment_monotones, ideal_functionality_state, tripartite_leakage, EnvironmentMonotones,
    TripartiteState, DEGENERACY_TOLERANCE,
};

/// Serialized form of a regular embedding: a primitive reference and the
/// phases in support order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub primitive: String,
    pub phases: Vec<f64>,
}

impl EmbeddingRecord {
    pub fn new(primitive: impl Into<String>, e: &RegularEmbedding) -> Self {
        Self {
            primitive: primitive.into(),
            phases: e.phases().values().to_vec(),
        }
    }
}
