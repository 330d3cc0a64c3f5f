//! Truncated hypergeometric functions of a matrix argument.
//!
//! The series ₚFq^(α) over Jack functions is summed over all partitions of
//! weight at most m, with the coefficient and Jack term of each partition
//! obtained from its predecessor in a single sweep rather than recomputed
//! from scratch. On top of the evaluators sit distributions of extreme
//! eigenvalues and traces of β-Laguerre and Wishart random matrices.

pub mod coefficients;
pub mod error;
pub mod jack;
pub mod partitions;
pub mod series;
pub mod stats;

pub use coefficients::SeriesParameters;
pub use error::{Error, Result};
pub use partitions::{Partition, PartitionTable};
pub use series::{
    convergence_diagnostic, hg_custom, hg_general, hg_identity, TruncationResult, Warning,
};
