use serde::{Deserialize, Serialize};

use super::error::PropagatorError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Split,
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropagatorConfig {
    pub dt: f64,
    pub n_steps: usize,
    #[serde(default)]
    pub method: Method,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
}

fn default_record_every() -> usize {
    10
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        PropagatorConfig { dt: 1e-3, n_steps: 2000, method: Method::Split, record_every: default_record_every() }
    }
}

impl PropagatorConfig {
    pub fn validate(&self) -> Result<(), PropagatorError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(PropagatorError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.n_steps == 0 {
            return Err(PropagatorError::Config("n_steps must be at least 1".into()));
        }
        if self.record_every == 0 {
            return Err(PropagatorError::Config("record_every must be at least 1".into()));
        }
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.n_steps as f64
    }

    /// Step indices at which samples are taken: 0, every `record_every`
    /// steps, and the final step.
    pub fn record_steps(&self) -> Vec<usize> {
        let mut steps: Vec<usize> = (0..=self.n_steps).step_by(self.record_every).collect();
        if *steps.last().unwrap() != self.n_steps {
            steps.push(self.n_steps);
        }
        steps
    }
}

/// Runtime guard thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonitorLimits {
    pub boundary_mass: f64,
    pub truncation_mass: f64,
    pub norm_drift: f64,
}

impl Default for MonitorLimits {
    fn default() -> Self {
        MonitorLimits { boundary_mass: 1e-8, truncation_mass: 1e-8, norm_drift: 1e-9 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_steps_include_endpoints() {
        let cfg = PropagatorConfig { dt: 0.1, n_steps: 25, record_every: 10, ..Default::default() };
        assert_eq!(cfg.record_steps(), vec![0, 10, 20, 25]);
        let cfg = PropagatorConfig { n_steps: 20, ..cfg };
        assert_eq!(cfg.record_steps(), vec![0, 10, 20]);
    }

    #[test]
    fn validation() {
        assert!(PropagatorConfig::default().validate().is_ok());
        assert!(PropagatorConfig { dt: 0.0, ..Default::default() }.validate().is_err());
        assert!(PropagatorConfig { n_steps: 0, ..Default::default() }.validate().is_err());
        assert!(PropagatorConfig { record_every: 0, ..Default::default() }.validate().is_err());
    }
}
