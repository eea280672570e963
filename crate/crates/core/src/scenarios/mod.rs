//! Measurement scenarios built on the hybrid engine: a free classical
//! particle and pointer models reading out momentum, oscillator energy
//! and a spin component, plus the symbolic equation-of-motion report.

mod config;
mod disturbance;
mod eom;
mod error;
mod hamiltonian;
mod presets;
mod run;

pub use config::{InitialState, ScenarioConfig, ScenarioKind, Truncation};
pub use disturbance::{disturbance_study, DisturbancePoint, DisturbanceReport};
pub use eom::{derive_eom_report, EomEntry, EomReport};
pub use error::ScenarioError;
pub use hamiltonian::{
    free_liouvillian, hamiltonian, measured_observable, measured_quantity, oscillator, pointer, pointer_sign,
    scenario_generators, Params,
};
pub use run::{
    build_representation, energy_meter, evolve_with, free_classical, momentum_meter, rhs_label, run_scenario,
    spin_meter, Check, Readout, RunResult,
};
