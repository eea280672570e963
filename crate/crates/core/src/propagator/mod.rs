//! Time evolution: exact dense exponentials, a Strang split stepper and
//! Ehrenfest consistency checks on recorded trajectories.

mod config;
mod convergence;
mod dense;
mod ehrenfest;
mod error;
mod linalg;
mod split;
mod timeseries;

pub use config::{Method, MonitorLimits, PropagatorConfig};
pub use convergence::{dt_halving_study, ConvergenceReport};
pub use dense::{evolve_dense, evolve_dense_series, DenseEvolver};
pub use ehrenfest::{ehrenfest_check, ehrenfest_check_with, ehrenfest_tolerance, EhrenfestPair, EhrenfestReport};
pub use error::{MonitorKind, MonitorTrip, PropagatorError};
pub use linalg::{hermitian_eigen, hermiticity_defect, unitary_from_eigen};
pub use split::{evolve_split, is_splittable, split_final_state, Channel, Diagnostics, Evolution, SplitHamiltonian};
pub use timeseries::TimeSeries;

