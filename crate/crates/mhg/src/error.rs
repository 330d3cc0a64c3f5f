use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A denominator Pochhammer factor vanished; the series value is a pole.
    #[error(
        "pole: denominator parameter b = {b} hits zero at box ({row},{col}) of partition {kappa:?}"
    )]
    Pole {
        b: f64,
        row: usize,
        col: usize,
        kappa: Vec<usize>,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
