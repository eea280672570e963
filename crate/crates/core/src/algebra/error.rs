use thiserror::Error;

use super::generator::GeneratorId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator `{0}` is not a classical multiplication symbol")]
    NonClassical(GeneratorId),
    #[error("classical polynomials must have real coefficients")]
    ComplexClassicalCoefficient,
    #[error("cannot parse operator polynomial: {0}")]
    Parse(String),
}
