//! Classical information theory over finite joint distributions.

mod alphabet;
mod components;
mod dependent;
mod function;
mod info;
mod joint;

pub use alphabet::{bit_string, Alphabet, BOT};
pub use components::{connected_components, ComponentPartition};
pub use dependent::{
    collapse_both, dependent_part, dependent_part_of_y, is_trivial, DependentPartMap,
    TrivialityReport, CONDITIONAL_TOLERANCE, TRIVIALITY_TOLERANCE,
};
pub use function::{randomize_function, FunctionOutcome, FunctionTable};
pub use info::{
    binary_entropy, conditional_entropy, conditional_entropy_x_given_y, entropy_x, entropy_y,
    joint_entropy, mutual_information, shannon_entropy,
};
pub(crate) use info::entropy_unchecked;
pub use joint::JointDistribution;
