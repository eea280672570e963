use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::error::ScenarioError;
use crate::propagator::PropagatorConfig;
use crate::representation::{FockSpec, GaussianSpec, GridSpec, QuantumInit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    FreeClassical,
    MomentumMeter,
    EnergyMeter,
    SpinMeter,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] =
        [ScenarioKind::FreeClassical, ScenarioKind::MomentumMeter, ScenarioKind::EnergyMeter, ScenarioKind::SpinMeter];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::FreeClassical => "free_classical",
            ScenarioKind::MomentumMeter => "momentum_meter",
            ScenarioKind::EnergyMeter => "energy_meter",
            ScenarioKind::SpinMeter => "spin_meter",
        }
    }

    pub fn has_oscillator(self) -> bool {
        matches!(self, ScenarioKind::MomentumMeter | ScenarioKind::EnergyMeter)
    }
}

/// Truncation of the oscillator factor: Fock levels, or grid points when
/// `omega = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub n_levels: usize,
    #[serde(default = "default_q_half_width")]
    pub grid_half_width: f64,
}

fn default_q_half_width() -> f64 {
    FockSpec::default().grid_half_width
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { n_levels: 24, grid_half_width: default_q_half_width() }
    }
}

/// Apparatus Gaussian plus the quantum initial state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub a0: f64,
    pub b0: f64,
    pub sigma_a: f64,
    pub sigma_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumInit>,
}

impl InitialState {
    pub fn gaussian(&self) -> GaussianSpec {
        GaussianSpec { a0: self.a0, b0: self.b0, sigma_a: self.sigma_a, sigma_b: self.sigma_b, quantum: self.quantum }
    }
}

/// Everything a scenario run depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    /// Classical mass.
    pub m: f64,
    /// Coupling strength (must be 0 for `free_classical`).
    pub g: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// Free spin splitting `epsilon·s3` (spin meter only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub initial: InitialState,
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fock: Option<Truncation>,
    pub propagator: PropagatorConfig,
}

impl ScenarioConfig {
    /// Default configuration of each scenario.
    pub fn preset(kind: ScenarioKind) -> Self {
        let gaussian = |a0, b0, quantum| InitialState { a0, b0, sigma_a: 0.7, sigma_b: 0.7, quantum };
        let base = ScenarioConfig {
            scenario: kind,
            m: 1.0,
            g: 0.0,
            mu: None,
            omega: None,
            epsilon: None,
            initial: gaussian(2.0, -4.0, None),
            grid: GridSpec::default(),
            fock: None,
            propagator: PropagatorConfig::default(),
        };
        match kind {
            ScenarioKind::FreeClassical => base,
            ScenarioKind::MomentumMeter => ScenarioConfig {
                g: 0.2,
                mu: Some(1.0),
                omega: Some(1.0),
                initial: gaussian(0.0, 0.0, Some(QuantumInit::Coherent { q0: 0.0, p0: 1.5 })),
                fock: Some(Truncation::default()),
                ..base
            },
            ScenarioKind::EnergyMeter => ScenarioConfig {
                g: 0.2,
                mu: Some(1.0),
                omega: Some(1.0),
                initial: gaussian(0.0, 0.0, Some(QuantumInit::Number { n: 1 })),
                fock: Some(Truncation::default()),
                ..base
            },
            ScenarioKind::SpinMeter => ScenarioConfig {
                g: 0.4,
                epsilon: Some(0.0),
                initial: gaussian(0.0, 0.0, Some(QuantumInit::Spin { theta: 0.0, phi: 0.0 })),
                ..base
            },
        }
    }

    /// Momentum meter with `omega = 0` on a `q` grid: `p` is conserved, so
    /// the readout must return the initial momentum.
    pub fn momentum_calibration() -> Self {
        ScenarioConfig {
            m: 2.0,
            mu: Some(4.0),
            omega: Some(0.0),
            initial: InitialState {
                quantum: Some(QuantumInit::Wavepacket { q0: 0.0, p0: 1.5, sigma: 1.4 }),
                ..ScenarioConfig::preset(ScenarioKind::MomentumMeter).initial
            },
            fock: Some(Truncation { n_levels: 32, grid_half_width: 10.0 }),
            ..ScenarioConfig::preset(ScenarioKind::MomentumMeter)
        }
    }

    /// Reads a JSON config. Keys other than `scenario` are optional and
    /// fall back to the scenario preset; objects merge key by key and the
    /// quantum initial state is replaced as a whole.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let user: Value = serde_json::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))?;
        let kind = user
            .get("scenario")
            .cloned()
            .ok_or_else(|| ScenarioError::Config("missing key `scenario`".into()))?;
        let kind: ScenarioKind = serde_json::from_value(kind).map_err(|e| ScenarioError::Config(e.to_string()))?;
        let mut merged = serde_json::to_value(ScenarioConfig::preset(kind)).expect("preset serializes");
        merge(&mut merged, &user);
        let cfg: ScenarioConfig = serde_json::from_value(merged).map_err(|e| ScenarioError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn duration(&self) -> f64 {
        self.propagator.duration()
    }

    /// Oscillator factor, if the scenario has one.
    pub fn fock_spec(&self) -> Option<FockSpec> {
        let t = self.fock?;
        Some(FockSpec { n_levels: t.n_levels, mu: self.mu?, omega: self.omega?, grid_half_width: t.grid_half_width })
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |msg: String| Err(ScenarioError::Config(msg));
        let numbers = [
            ("m", Some(self.m)),
            ("g", Some(self.g)),
            ("mu", self.mu),
            ("omega", self.omega),
            ("epsilon", self.epsilon),
            ("initial.a0", Some(self.initial.a0)),
            ("initial.b0", Some(self.initial.b0)),
            ("initial.sigma_a", Some(self.initial.sigma_a)),
            ("initial.sigma_b", Some(self.initial.sigma_b)),
            ("propagator.dt", Some(self.propagator.dt)),
            ("grid.l_a", Some(self.grid.l_a)),
            ("grid.l_b", Some(self.grid.l_b)),
        ];
        for (name, v) in numbers {
            if let Some(v) = v {
                if !v.is_finite() {
                    return bad(format!("`{name}` must be finite"));
                }
            }
        }
        if let Some(q) = self.initial.quantum {
            let finite = match q {
                QuantumInit::Coherent { q0, p0 } => q0.is_finite() && p0.is_finite(),
                QuantumInit::Number { .. } => true,
                QuantumInit::Wavepacket { q0, p0, sigma } => q0.is_finite() && p0.is_finite() && sigma.is_finite(),
                QuantumInit::Spin { theta, phi } => theta.is_finite() && phi.is_finite(),
            };
            if !finite {
                return bad("quantum initial state must be finite".into());
            }
        }
        if self.m <= 0.0 {
            return bad("`m` must be positive".into());
        }
        let name = self.scenario.name();
        let is_spin_init = matches!(self.initial.quantum, Some(QuantumInit::Spin { .. }));
        match self.scenario {
            ScenarioKind::FreeClassical => {
                if self.g != 0.0 {
                    return bad("`g` does not enter free_classical and must be 0".into());
                }
                if self.initial.quantum.is_some() {
                    return bad("free_classical has no quantum sector".into());
                }
            }
            ScenarioKind::MomentumMeter | ScenarioKind::EnergyMeter => {
                if is_spin_init {
                    return bad(format!("{name} forbids a spin direction"));
                }
                if self.initial.quantum.is_none() {
                    return bad(format!("{name} needs a quantum initial state"));
                }
                if self.fock.is_none() || self.mu.is_none() || self.omega.is_none() {
                    return bad(format!("{name} needs `mu`, `omega` and `fock`"));
                }
            }
            ScenarioKind::SpinMeter => {
                if self.fock.is_some() {
                    return bad("spin_meter forbids `fock`".into());
                }
                if !is_spin_init {
                    return bad("spin_meter needs a spin initial state".into());
                }
            }
        }
        if !self.scenario.has_oscillator() && (self.mu.is_some() || self.omega.is_some()) {
            return bad(format!("{name} takes no `mu`/`omega`"));
        }
        if self.scenario != ScenarioKind::SpinMeter && self.epsilon.is_some() {
            return bad("`epsilon` is spin_meter only".into());
        }
        self.grid.validate()?;
        if let Some(spec) = self.fock_spec() {
            spec.validate()?;
        }
        self.propagator.validate()?;
        Ok(())
    }
}

fn merge(base: &mut Value, user: &Value) {
    match (base, user) {
        (Value::Object(b), Value::Object(u)) => {
            for (k, v) in u {
                match b.get_mut(k) {
                    Some(slot) if k != "quantum" && slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (b, u) => *b = u.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for kind in ScenarioKind::ALL {
            ScenarioConfig::preset(kind).validate().unwrap();
        }
        ScenarioConfig::momentum_calibration().validate().unwrap();
    }

    #[test]
    fn json_round_trip_and_partial_override() {
        let cfg = ScenarioConfig::from_json(r#"{"scenario":"momentum_meter","g":0.4,"grid":{"n_a":32}}"#).unwrap();
        assert_eq!(cfg.g, 0.4);
        assert_eq!(cfg.grid.n_a, 32);
        assert_eq!(cfg.grid.n_b, 64);
        let back = ScenarioConfig::from_json(&cfg.to_json().to_string()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn quantum_state_is_replaced_not_merged() {
        let cfg =
            ScenarioConfig::from_json(r#"{"scenario":"energy_meter","initial":{"quantum":{"number":{"n":2}}}}"#).unwrap();
        assert_eq!(cfg.initial.quantum, Some(QuantumInit::Number { n: 2 }));
    }

    #[test]
    fn rejects_unknown_and_inconsistent_keys() {
        for text in [
            r#"{"scenario":"free_classical","mass":1}"#,
            r#"{"scenario":"free_classical","grid":{"n_c":4}}"#,
            r#"{"scenario":"free_classical","g":0.1}"#,
            r#"{"scenario":"spin_meter","fock":{"n_levels":8}}"#,
            r#"{"scenario":"momentum_meter","initial":{"quantum":{"spin":{"theta":0,"phi":0}}}}"#,
            r#"{"scenario":"free_classical","m":-1}"#,
            r#"{"scenario":"teleporter"}"#,
            r#"{"g":0.1}"#,
        ] {
            assert!(ScenarioConfig::from_json(text).is_err(), "{text}");
        }
    }
}
