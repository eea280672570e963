use super::config::{ScenarioConfig, ScenarioKind};
use super::error::ScenarioError;
use crate::algebra::{gen, heisenberg_rhs, rational, rational_from_f64, real, GeneratorId, OperatorPoly, Rational};

use GeneratorId::*;

/// Physical parameters as exact rationals (shortest decimal of each float).
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub m: Rational,
    pub mu: Rational,
    pub omega: Rational,
    pub g: Rational,
    pub epsilon: Rational,
}

impl Params {
    pub fn from_config(cfg: &ScenarioConfig) -> Result<Self, ScenarioError> {
        let exact = |name: &str, x: f64| {
            rational_from_f64(x).ok_or_else(|| ScenarioError::Config(format!("`{name}` is not a finite number")))
        };
        Ok(Params {
            m: exact("m", cfg.m)?,
            mu: exact("mu", cfg.mu.unwrap_or(1.0))?,
            omega: exact("omega", cfg.omega.unwrap_or(0.0))?,
            g: exact("g", cfg.g)?,
            epsilon: exact("epsilon", cfg.epsilon.unwrap_or(0.0))?,
        })
    }

    pub fn with_g(&self, g: Rational) -> Self {
        Params { g, ..self.clone() }
    }
}

fn c(r: Rational) -> crate::algebra::Scalar {
    real(r)
}

/// `p²/2μ + μω²q²/2`.
pub fn oscillator(p: &Params) -> OperatorPoly {
    let kinetic = (gen(PHat) * gen(PHat)) * c(rational(1, 2) / &p.mu);
    let potential = (gen(QHat) * gen(QHat)) * c(&p.mu * &p.omega * &p.omega * rational(1, 2));
    kinetic + potential
}

/// `a·at/m`, the free classical Liouvillian.
pub fn free_liouvillian(p: &Params) -> OperatorPoly {
    (gen(A) * gen(ATilde)) * c(Rational::from_integer(1.into()) / &p.m)
}

/// The scenario's quantum observable multiplying the tilde generator in
/// the coupling term.
pub fn measured_observable(kind: ScenarioKind, p: &Params) -> Option<OperatorPoly> {
    match kind {
        ScenarioKind::FreeClassical => None,
        ScenarioKind::MomentumMeter => Some(gen(PHat)),
        ScenarioKind::EnergyMeter => Some(oscillator(p)),
        ScenarioKind::SpinMeter => Some(gen(S3)),
    }
}

pub fn measured_quantity(kind: ScenarioKind) -> Option<&'static str> {
    match kind {
        ScenarioKind::FreeClassical => None,
        ScenarioKind::MomentumMeter => Some("momentum"),
        ScenarioKind::EnergyMeter => Some("energy"),
        ScenarioKind::SpinMeter => Some("s3"),
    }
}

/// Classical variable whose drift encodes the measured quantity.
pub fn pointer(kind: ScenarioKind) -> GeneratorId {
    match kind {
        ScenarioKind::EnergyMeter => A,
        _ => B,
    }
}

/// Generators the scenario acts on.
pub fn scenario_generators(kind: ScenarioKind) -> Vec<GeneratorId> {
    let mut gens = match kind {
        ScenarioKind::FreeClassical => vec![],
        ScenarioKind::MomentumMeter | ScenarioKind::EnergyMeter => vec![QHat, PHat],
        ScenarioKind::SpinMeter => vec![S1, S2, S3],
    };
    gens.extend(GeneratorId::CLASSICAL);
    gens
}

/// Total Hamiltonian of a scenario.
pub fn hamiltonian(kind: ScenarioKind, p: &Params) -> OperatorPoly {
    let g = c(p.g.clone());
    let free = free_liouvillian(p);
    match kind {
        ScenarioKind::FreeClassical => free,
        ScenarioKind::MomentumMeter => oscillator(p) + free + (gen(PHat) * gen(ATilde)) * g,
        ScenarioKind::EnergyMeter => oscillator(p) + free + (oscillator(p) * gen(BTilde)) * g,
        ScenarioKind::SpinMeter => free + (gen(S3) * gen(ATilde)) * g + gen(S3) * c(p.epsilon.clone()),
    }
}

/// Sign `s` with `rhs(pointer, H) - rhs(pointer, H|g=0) = s·g·O`, where `O`
/// is the measured observable. Errors if the coupling does not have that form.
pub fn pointer_sign(kind: ScenarioKind, p: &Params) -> Result<i32, ScenarioError> {
    let obs = measured_observable(kind, p).ok_or_else(|| ScenarioError::Readout("scenario has no meter".into()))?;
    let x = gen(pointer(kind));
    let one = p.with_g(rational(1, 1));
    let zero = p.with_g(rational(0, 1));
    let shift = heisenberg_rhs(&x, &hamiltonian(kind, &one)) - heisenberg_rhs(&x, &hamiltonian(kind, &zero));
    if shift == obs {
        Ok(1)
    } else if shift == -obs {
        Ok(-1)
    } else {
        Err(ScenarioError::Readout(format!("pointer shift `{shift}` is not ±(measured observable)")))
    }
}
