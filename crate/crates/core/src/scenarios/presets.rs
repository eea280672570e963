//! Reduced-size configurations small enough for the dense oracle.

use super::config::{InitialState, ScenarioConfig, ScenarioKind, Truncation};
use crate::representation::{GridSpec, QuantumInit};

impl ScenarioConfig {
    /// Variant on a grid with total dimension at most 3072.
    pub fn reduced(kind: ScenarioKind) -> Self {
        let base = ScenarioConfig::preset(kind);
        match kind {
            ScenarioKind::FreeClassical => ScenarioConfig {
                grid: GridSpec { n_a: 32, n_b: 32, l_a: 6.0, l_b: 8.0 },
                ..base
            },
            ScenarioKind::MomentumMeter => ScenarioConfig {
                m: 4.0,
                grid: GridSpec { n_a: 8, n_b: 16, l_a: 2.0, l_b: 8.0 },
                initial: InitialState { b0: -0.5, sigma_a: 0.3, sigma_b: 1.5, ..base.initial },
                fock: Some(Truncation { n_levels: 20, ..Truncation::default() }),
                ..base
            },
            ScenarioKind::EnergyMeter => ScenarioConfig {
                m: 2.0,
                grid: GridSpec { n_a: 32, n_b: 16, l_a: 6.0, l_b: 8.0 },
                initial: InitialState { sigma_a: 0.75, sigma_b: 1.5, ..base.initial },
                fock: Some(Truncation { n_levels: 6, ..Truncation::default() }),
                ..base
            },
            ScenarioKind::SpinMeter => ScenarioConfig {
                grid: GridSpec { n_a: 8, n_b: 32, l_a: 2.0, l_b: 6.0 },
                initial: InitialState { sigma_a: 0.3, ..base.initial },
                ..base
            },
        }
    }

    /// Reduced `omega = 0` calibration (dimension 4096). The large `mu`
    /// keeps the free packet from spreading off the short `q` grid.
    pub fn momentum_calibration_reduced() -> Self {
        let base = ScenarioConfig::momentum_calibration();
        ScenarioConfig {
            m: 4.0,
            mu: Some(16.0),
            grid: GridSpec { n_a: 8, n_b: 16, l_a: 2.0, l_b: 8.0 },
            initial: InitialState {
                b0: -0.5,
                sigma_a: 0.3,
                sigma_b: 1.5,
                quantum: Some(QuantumInit::Wavepacket { q0: 0.0, p0: 1.5, sigma: 1.0 }),
                ..base.initial
            },
            fock: Some(Truncation { n_levels: 32, grid_half_width: 6.0 }),
            ..base
        }
    }
}
