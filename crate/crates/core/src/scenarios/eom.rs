use serde::Serialize;

use super::config::ScenarioKind;
use super::hamiltonian::{hamiltonian, scenario_generators, Params};
use crate::algebra::{gen, heisenberg_rhs, rational, real, GeneratorId, OperatorPoly, Rational};

use GeneratorId::*;

/// One Heisenberg equation: engine result against the reference form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EomEntry {
    pub variable: String,
    pub engine_rhs: String,
    /// Reference right-hand side in plain symbols.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<&'static str>,
    /// The reference form instantiated at the same parameters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    pub observable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EomReport {
    pub scenario: ScenarioKind,
    pub parameters: Vec<(String, String)>,
    pub hamiltonian: String,
    pub hamiltonian_observable: bool,
    pub entries: Vec<EomEntry>,
}

impl EomReport {
    pub fn mismatches(&self) -> Vec<&EomEntry> {
        self.entries.iter().filter(|e| e.matches == Some(false)).collect()
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().is_empty()
    }

    pub fn entry(&self, g: GeneratorId) -> Option<&EomEntry> {
        self.entries.iter().find(|e| e.variable == g.symbol())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn scaled(x: OperatorPoly, r: Rational) -> OperatorPoly {
    x * real(r)
}

/// Published equations of motion, transcribed literally.
fn printed_equations(kind: ScenarioKind, p: &Params) -> Vec<(GeneratorId, &'static str, OperatorPoly)> {
    let inv_m = rational(1, 1) / &p.m;
    match kind {
        ScenarioKind::FreeClassical => vec![
            (A, "0", OperatorPoly::zero()),
            (B, "a/m", scaled(gen(A), inv_m)),
            (ATilde, "0", OperatorPoly::zero()),
            (BTilde, "0", OperatorPoly::zero()),
        ],
        ScenarioKind::MomentumMeter => vec![
            (A, "0", OperatorPoly::zero()),
            (B, "at/m + g*p", scaled(gen(ATilde), inv_m) + scaled(gen(PHat), p.g.clone())),
            (QHat, "p/mu + g*at", scaled(gen(PHat), rational(1, 1) / &p.mu) + scaled(gen(ATilde), p.g.clone())),
            (PHat, "mu*omega^2*q", scaled(gen(QHat), &p.mu * &p.omega * &p.omega)),
        ],
        ScenarioKind::EnergyMeter | ScenarioKind::SpinMeter => vec![],
    }
}

/// Heisenberg right-hand side of every scenario generator, compared with
/// the printed equation where one exists. Mismatches are reported, not
/// corrected.
pub fn derive_eom_report(kind: ScenarioKind, p: &Params) -> EomReport {
    let h = hamiltonian(kind, p);
    let printed = printed_equations(kind, p);
    let entries = scenario_generators(kind)
        .into_iter()
        .map(|g| {
            let rhs = heisenberg_rhs(&gen(g), &h);
            let found = printed.iter().find(|(x, _, _)| *x == g);
            EomEntry {
                variable: g.symbol().to_string(),
                engine_rhs: rhs.to_string(),
                printed: found.map(|(_, text, _)| *text),
                printed_rhs: found.map(|(_, _, poly)| poly.to_string()),
                matches: found.map(|(_, _, poly)| *poly == rhs),
                observable: rhs.is_observable(),
            }
        })
        .collect();
    EomReport {
        scenario: kind,
        parameters: vec![
            ("m".into(), p.m.to_string()),
            ("mu".into(), p.mu.to_string()),
            ("omega".into(), p.omega.to_string()),
            ("g".into(), p.g.to_string()),
            ("epsilon".into(), p.epsilon.to_string()),
        ],
        hamiltonian: h.to_string(),
        hamiltonian_observable: h.is_observable(),
        entries,
    }
}
