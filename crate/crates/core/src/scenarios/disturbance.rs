use serde::Serialize;

use super::config::{ScenarioConfig, ScenarioKind};
use super::error::ScenarioError;
use super::run::run_scenario;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisturbancePoint {
    pub g: f64,
    pub var_q_final: f64,
    /// `Var(q)(T)` minus the decoupled value.
    pub var_q_excess: f64,
    /// Largest `|<q>(t) - <q>_0(t)|` against the decoupled run.
    pub mean_q_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisturbanceReport {
    pub baseline_var_q: f64,
    pub points: Vec<DisturbancePoint>,
}

impl DisturbanceReport {
    /// True if the variance excess is positive and grows along `points`.
    pub fn excess_increasing(&self) -> bool {
        self.points.first().is_some_and(|p| p.var_q_excess > 0.0)
            && self.points.windows(2).all(|w| w[1].var_q_excess > w[0].var_q_excess)
    }

    pub fn max_mean_deviation(&self) -> f64 {
        self.points.iter().map(|p| p.mean_q_deviation).fold(0.0, f64::max)
    }
}

/// Back-action of the momentum meter on `q`: compares runs at each `g`
/// with the decoupled run.
pub fn disturbance_study(base: &ScenarioConfig, couplings: &[f64]) -> Result<DisturbanceReport, ScenarioError> {
    if base.scenario != ScenarioKind::MomentumMeter {
        return Err(ScenarioError::Config("disturbance study needs momentum_meter".into()));
    }
    let run = |g: f64| run_scenario(&ScenarioConfig { g, ..base.clone() });
    let var_q = |r: &super::run::RunResult| {
        let (q, q2) = (r.channel("q"), r.channel("q^2"));
        q2[q2.len() - 1] - q[q.len() - 1].powi(2)
    };
    let baseline = run(0.0)?;
    let baseline_var_q = var_q(&baseline);
    let q0 = baseline.channel("q");
    let mut points = Vec::new();
    for &g in couplings {
        let r = run(g)?;
        let deviation = r.channel("q").iter().zip(q0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let v = var_q(&r);
        points.push(DisturbancePoint { g, var_q_final: v, var_q_excess: v - baseline_var_q, mean_q_deviation: deviation });
    }
    Ok(DisturbanceReport { baseline_var_q, points })
}
