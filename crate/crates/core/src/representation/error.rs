use thiserror::Error;

use crate::algebra::GeneratorId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepresentationError {
    #[error("grid size {0} must be a power of two and at least 8")]
    BadGridSize(usize),
    #[error("grid half-width must be positive and finite, got {0}")]
    BadHalfWidth(f64),
    #[error("Fock truncation must keep at least 2 levels, got {0}")]
    TooFewLevels(usize),
    #[error("invalid quantum parameter: {0}")]
    BadQuantumParameter(String),
    #[error("generator `{0}` has no realization in the chosen quantum sector")]
    UnknownGenerator(GeneratorId),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dense materialization needs dimension <= {limit}, got {dim}")]
    TooLargeForDense { dim: usize, limit: usize },
    #[error("Gaussian on the {axis} axis reaches within 5 sigma of the boundary (center {center}, sigma {sigma}, half-width {half_width})")]
    SupportTooCloseToBoundary { axis: &'static str, center: f64, sigma: f64, half_width: f64 },
    #[error("initial quantum state `{0}` does not fit the quantum sector")]
    IncompatibleInitialState(&'static str),
}
