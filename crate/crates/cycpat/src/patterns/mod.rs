//! Patterns and signed-patterns of `Z_q`, admissible sets, convenience, and
//! the stability classifier with Fourier-dual extraction.

mod admissible;
pub mod bracket;
mod convenient;
mod spectrum;
mod stability;
mod subject;

pub use admissible::{
    admissible_sets, all_level_pieces, atom_order_key, is_admissible, level, level_pieces, subgroups_of_units,
};
pub use convenient::{is_convenient, is_convenient_by_powers, is_convenient_signed};
pub use spectrum::{fourier_class_partition, spectrum, FourierClass, FourierClasses};
pub use stability::{
    classify, dual_coordinates, is_inverse_stable, is_inverse_stable_signed, is_product_stable,
    is_product_stable_signed, stability_class, StabilityClass, StabilityReport,
};
pub use subject::{multiply_pattern, Pattern, SignedClass, SignedPattern, Subject};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("not a partition of Z_q: {0}")]
    NotAPartition(String),
    #[error("sets overlap at position {position}")]
    OverlappingSets { position: usize },
    #[error("{a} is not a unit modulo {q}")]
    NotAUnit { a: usize, q: usize },
    #[error("expected an unsigned pattern, got {0}")]
    UnexpectedSigns(String),
    #[error("the single-color pattern is excluded")]
    AllEqualPattern,
    #[error("every member is singular: all spectrum vectors vanish at Fourier index {index}")]
    GenericallySingular { index: usize },
    #[error("{0} is not stable")]
    Unstable(String),
}
