use serde::Serialize;
use thiserror::Error;

use crate::representation::RepresentationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonitorKind {
    Leakage,
    Truncation,
    NormDrift,
}

/// A runtime guard that fired during evolution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorTrip {
    pub kind: MonitorKind,
    pub time: f64,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropagatorError {
    #[error("invalid propagator configuration: {0}")]
    Config(String),
    #[error("Hamiltonian term `{0}` is not exactly exponentiable by the split stepper")]
    NonExponentiable(String),
    #[error("Hamiltonian is not self-adjoint (deviation {0:e})")]
    NotHermitian(f64),
    #[error("{:?} monitor tripped at t = {}: {:e} > {:e}", .0.kind, .0.time, .0.value, .0.threshold)]
    Monitor(MonitorTrip),
    #[error("time series has no channel `{0}`")]
    MissingChannel(String),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}
