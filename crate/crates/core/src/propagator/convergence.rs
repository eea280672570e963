use serde::Serialize;

use super::dense::DenseEvolver;
use super::error::PropagatorError;
use super::split::{split_final_state, SplitHamiltonian};
use crate::algebra::OperatorPoly;
use crate::representation::{assemble, HybridState, Representation};

/// Split-vs-dense error at a fixed final time for successively halved steps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub duration: f64,
    pub dts: Vec<f64>,
    pub errors: Vec<f64>,
    /// `errors[k] / errors[k + 1]`.
    pub ratios: Vec<f64>,
}

impl ConvergenceReport {
    pub fn min_ratio(&self) -> f64 {
        self.ratios.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Runs the split stepper with `base_steps · 2^k` steps for `k = 0..=halvings`
/// and compares each final state with the dense exponential.
pub fn dt_halving_study(
    state: &HybridState,
    h: &OperatorPoly,
    rep: &Representation,
    duration: f64,
    base_steps: usize,
    halvings: usize,
) -> Result<ConvergenceReport, PropagatorError> {
    let exact = DenseEvolver::new(&assemble(h, rep)?)?.evolve(state, duration);
    let split = SplitHamiltonian::new(h, rep)?;
    let mut dts = Vec::new();
    let mut errors = Vec::new();
    for k in 0..=halvings {
        let steps = base_steps << k;
        let dt = duration / steps as f64;
        let approx = split_final_state(state, &split, dt, steps);
        dts.push(dt);
        errors.push(approx.relative_distance(&exact));
    }
    let ratios = errors.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(ConvergenceReport { duration, dts, errors, ratios })
}
