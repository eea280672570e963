use thiserror::Error;

use crate::propagator::{MonitorTrip, PropagatorError};
use crate::representation::RepresentationError;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Propagator(#[from] PropagatorError),
    #[error("engine readout: {0}")]
    Readout(String),
}

impl ScenarioError {
    pub fn monitor_trip(&self) -> Option<&MonitorTrip> {
        match self {
            ScenarioError::Propagator(PropagatorError::Monitor(trip)) => Some(trip),
            _ => None,
        }
    }

    /// True for errors caused by the configuration rather than the run.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            ScenarioError::Config(_)
                | ScenarioError::Representation(_)
                | ScenarioError::Propagator(PropagatorError::Config(_))
                | ScenarioError::Propagator(PropagatorError::Representation(_))
        )
    }
}
