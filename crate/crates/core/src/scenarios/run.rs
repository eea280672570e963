use serde::Serialize;

use super::config::{ScenarioConfig, ScenarioKind};
use super::error::ScenarioError;
use super::hamiltonian::{
    hamiltonian, measured_quantity, oscillator, pointer, pointer_sign, scenario_generators, Params,
};
use crate::algebra::{gen, heisenberg_rhs, rational, GeneratorId, OperatorPoly};
use crate::propagator::{
    ehrenfest_check, evolve_dense_series, evolve_split, Channel, Diagnostics, EhrenfestReport, Evolution, Method,
    MonitorLimits, SplitHamiltonian, TimeSeries,
};
use crate::representation::{
    assemble, build_classical_rep, build_quantum_fock, build_spin, gaussian_state, HybridState, QuantumSector,
    Representation,
};

use GeneratorId::*;

/// Pointer-based estimate of the measured quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Readout {
    pub pointer: String,
    pub quantity: String,
    /// Engine sign of the coupling in the pointer equation.
    pub sign: i32,
    pub pointer_shift: f64,
    /// Least-squares slope of the pointer channel.
    pub fitted_rate: f64,
    /// `pointer_shift / T`.
    pub mean_rate: f64,
    /// Time average of the decoupled pointer velocity.
    pub free_drift: f64,
    /// `(mean_rate - free_drift) / (sign·g)`; absent at `g = 0`.
    pub inferred: Option<f64>,
    /// Slope standard error of the coupling-induced displacement.
    pub uncertainty: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, value: f64, expected: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, expected, tolerance, passed: (value - expected).abs() <= tolerance }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunResult {
    pub scenario: ScenarioKind,
    #[serde(skip)]
    pub series: TimeSeries,
    #[serde(skip)]
    pub final_state: HybridState,
    pub readout: Option<Readout>,
    pub diagnostics: Diagnostics,
    pub ehrenfest: EhrenfestReport,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl RunResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn channel(&self, label: &str) -> &[f64] {
        self.series.channel(label).expect("recorded channel")
    }

    pub fn inferred(&self) -> Option<f64> {
        self.readout.as_ref().and_then(|r| r.inferred)
    }
}

/// Representation selected by the scenario.
pub fn build_representation(cfg: &ScenarioConfig) -> Result<Representation, ScenarioError> {
    let classical = build_classical_rep(cfg.grid)?;
    let quantum = match cfg.scenario {
        ScenarioKind::FreeClassical => QuantumSector::Trivial,
        ScenarioKind::SpinMeter => build_spin(),
        ScenarioKind::MomentumMeter | ScenarioKind::EnergyMeter => {
            build_quantum_fock(cfg.fock_spec().ok_or_else(|| ScenarioError::Config("missing `fock`".into()))?)?
        }
    };
    Ok(Representation::new(classical, quantum))
}

pub fn rhs_label(x: &str) -> String {
    format!("rhs_{x}")
}

/// Observables recorded besides the generators, with their Ehrenfest pairs.
fn extra_observables(kind: ScenarioKind, p: &Params) -> Vec<(String, OperatorPoly, bool)> {
    match kind {
        ScenarioKind::FreeClassical => vec![],
        ScenarioKind::MomentumMeter => vec![("q^2".into(), gen(QHat) * gen(QHat), false)],
        ScenarioKind::EnergyMeter => vec![("h_q".into(), oscillator(p), true)],
        ScenarioKind::SpinMeter => vec![("b*s3".into(), gen(B) * gen(S3), true), ("s3^2".into(), gen(S3) * gen(S3), false)],
    }
}

/// Assembles the recorded channels: each generator `X` with `rhs_X`, the
/// decoupled pointer velocity `drift`, and scenario extras.
fn channels(
    kind: ScenarioKind,
    p: &Params,
    h: &OperatorPoly,
    rep: &Representation,
) -> Result<(Vec<Channel>, Vec<(String, String)>), ScenarioError> {
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    let push = |label: String, poly: &OperatorPoly, out: &mut Vec<Channel>| -> Result<(), ScenarioError> {
        out.push(Channel { label, op: assemble(poly, rep)? });
        Ok(())
    };
    for g in scenario_generators(kind) {
        let x = gen(g);
        push(g.symbol().into(), &x, &mut out)?;
        push(rhs_label(g.symbol()), &heisenberg_rhs(&x, h), &mut out)?;
        pairs.push((g.symbol().to_string(), rhs_label(g.symbol())));
    }
    let decoupled = hamiltonian(kind, &p.with_g(rational(0, 1)));
    push("drift".into(), &heisenberg_rhs(&gen(pointer(kind)), &decoupled), &mut out)?;
    for (label, poly, paired) in extra_observables(kind, p) {
        push(label.clone(), &poly, &mut out)?;
        if paired {
            push(rhs_label(&label), &heisenberg_rhs(&poly, h), &mut out)?;
            pairs.push((label.clone(), rhs_label(&label)));
        }
    }
    Ok((out, pairs))
}

fn trapezoid_mean(t: &[f64], v: &[f64]) -> f64 {
    let area: f64 = t.windows(2).zip(v.windows(2)).map(|(tw, vw)| 0.5 * (tw[1] - tw[0]) * (vw[0] + vw[1])).sum();
    area / (t[t.len() - 1] - t[0])
}

fn cumulative_trapezoid(t: &[f64], v: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = vec![0.0];
    for i in 1..t.len() {
        acc += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
        out.push(acc);
    }
    out
}

/// Least-squares line `y = c + r·t`; returns `(r, standard error of r)`.
fn fit_line(t: &[f64], y: &[f64]) -> (f64, f64) {
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let stt: f64 = t.iter().map(|x| (x - tm).powi(2)).sum();
    let sty: f64 = t.iter().zip(y).map(|(x, v)| (x - tm) * (v - ym)).sum();
    let r = sty / stt;
    let c = ym - r * tm;
    let rss: f64 = t.iter().zip(y).map(|(x, v)| (v - c - r * x).powi(2)).sum();
    let se = if t.len() > 2 { (rss / (n - 2.0) / stt).sqrt() } else { 0.0 };
    (r, se)
}

fn readout(kind: ScenarioKind, p: &Params, g: f64, series: &TimeSeries) -> Result<Option<Readout>, ScenarioError> {
    let Some(quantity) = measured_quantity(kind) else { return Ok(None) };
    let sign = pointer_sign(kind, p)?;
    let label = pointer(kind).symbol();
    let t = &series.times;
    let x = series.channel(label)?;
    let drift = series.channel("drift")?;
    let duration = t[t.len() - 1] - t[0];
    let shift = x[x.len() - 1] - x[0];
    let (fitted_rate, _) = fit_line(t, x);
    let free = cumulative_trapezoid(t, drift);
    let induced: Vec<f64> = x.iter().zip(&free).map(|(v, f)| v - x[0] - f).collect();
    let (_, se) = fit_line(t, &induced);
    let scale = sign as f64 * g;
    let mean_rate = shift / duration;
    let free_drift = trapezoid_mean(t, drift);
    Ok(Some(Readout {
        pointer: label.into(),
        quantity: quantity.into(),
        sign,
        pointer_shift: shift,
        fitted_rate,
        mean_rate,
        free_drift,
        inferred: (g != 0.0).then(|| (mean_rate - free_drift) / scale),
        uncertainty: (g != 0.0).then(|| se / scale.abs()),
    }))
}

fn max_excursion(v: &[f64]) -> f64 {
    v.iter().map(|x| (x - v[0]).abs()).fold(0.0, f64::max)
}

fn scenario_checks(cfg: &ScenarioConfig, series: &TimeSeries, readout: Option<&Readout>) -> Result<Vec<Check>, ScenarioError> {
    let t = &series.times;
    let duration = t[t.len() - 1] - t[0];
    let mut checks = Vec::new();
    let a = series.channel("a")?;
    let b = series.channel("b")?;
    let inferred = readout.and_then(|r| r.inferred);
    match cfg.scenario {
        ScenarioKind::FreeClassical => {
            let shift = b[b.len() - 1] - cfg.initial.b0;
            checks.push(Check::new("b_shift", shift, cfg.initial.a0 / cfg.m * duration, 1e-5));
            checks.push(Check::new("a_drift", max_excursion(a), 0.0, 1e-8));
        }
        ScenarioKind::MomentumMeter => {
            checks.push(Check::new("a_drift", max_excursion(a), 0.0, 1e-8));
            let p = series.channel("p")?;
            if let Some(v) = inferred {
                if cfg.omega == Some(0.0) {
                    checks.push(Check::new("inferred_vs_initial_p", v, p[0], 1e-3));
                } else {
                    checks.push(Check::new("inferred_vs_mean_p", v, trapezoid_mean(t, p), 1e-3));
                }
            }
        }
        ScenarioKind::EnergyMeter => {
            let h = series.channel("h_q")?;
            checks.push(Check::new("h_q_drift", max_excursion(h), 0.0, 1e-8));
            if let Some(v) = inferred {
                checks.push(Check::new("inferred_vs_h_q", v, h[0], 1e-3));
            }
        }
        ScenarioKind::SpinMeter => {
            let s3 = series.channel("s3")?;
            checks.push(Check::new("a_drift", max_excursion(a), 0.0, 1e-8));
            checks.push(Check::new("s3_drift", max_excursion(s3), 0.0, 1e-9));
            if let Some(r) = readout {
                let free: f64 = cumulative_trapezoid(t, series.channel("drift")?)[t.len() - 1];
                let expected = free + r.sign as f64 * cfg.g * s3[0] * duration;
                checks.push(Check::new("pointer_shift", r.pointer_shift, expected, 1e-3));
            }
        }
    }
    Ok(checks)
}

/// Evolves `state` under `h` with the configured method.
pub fn evolve_with(
    state: &HybridState,
    h: &OperatorPoly,
    rep: &Representation,
    cfg: &ScenarioConfig,
    channels: &[Channel],
) -> Result<Evolution, ScenarioError> {
    let limits = MonitorLimits::default();
    Ok(match cfg.propagator.method {
        Method::Split => evolve_split(state, &SplitHamiltonian::new(h, rep)?, &cfg.propagator, channels, &limits)?,
        Method::Dense => evolve_dense_series(state, &assemble(h, rep)?, &cfg.propagator, channels, &limits)?,
    })
}

/// Runs any scenario.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunResult, ScenarioError> {
    cfg.validate()?;
    let kind = cfg.scenario;
    let p = Params::from_config(cfg)?;
    let rep = build_representation(cfg)?;
    let state = gaussian_state(&rep, &cfg.initial.gaussian())?;
    let h = hamiltonian(kind, &p);
    let (chans, pairs) = channels(kind, &p, &h, &rep)?;
    let evo = evolve_with(&state, &h, &rep, cfg, &chans)?;
    let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(x, r)| (x.as_str(), r.as_str())).collect();
    let ehrenfest = ehrenfest_check(&evo.series, &pair_refs)?;
    let readout = readout(kind, &p, cfg.g, &evo.series)?;
    let mut checks = scenario_checks(cfg, &evo.series, readout.as_ref())?;
    checks.push(Check::new("ehrenfest", ehrenfest.max_deviation(), 0.0, ehrenfest.tolerance));
    let mut notes = Vec::new();
    if kind == ScenarioKind::MomentumMeter && cfg.omega == Some(0.0) {
        notes.push("calibration run: omega = 0 on a q grid, p is conserved".into());
    }
    if let Some(r) = &readout {
        if r.sign < 0 {
            notes.push(format!("pointer `{}` moves against the measured quantity; readout divides by -g", r.pointer));
        }
    }
    Ok(RunResult {
        scenario: kind,
        series: evo.series,
        final_state: evo.final_state,
        readout,
        diagnostics: evo.diagnostics,
        ehrenfest,
        checks,
        notes,
    })
}

/// Runs `cfg`, requiring it to be of the given scenario.
fn run_kind(cfg: &ScenarioConfig, kind: ScenarioKind) -> Result<RunResult, ScenarioError> {
    if cfg.scenario != kind {
        return Err(ScenarioError::Config(format!("expected scenario {}, got {}", kind.name(), cfg.scenario.name())));
    }
    run_scenario(cfg)
}

pub fn free_classical(cfg: &ScenarioConfig) -> Result<RunResult, ScenarioError> {
    run_kind(cfg, ScenarioKind::FreeClassical)
}

pub fn momentum_meter(cfg: &ScenarioConfig) -> Result<RunResult, ScenarioError> {
    run_kind(cfg, ScenarioKind::MomentumMeter)
}

pub fn energy_meter(cfg: &ScenarioConfig) -> Result<RunResult, ScenarioError> {
    run_kind(cfg, ScenarioKind::EnergyMeter)
}

pub fn spin_meter(cfg: &ScenarioConfig) -> Result<RunResult, ScenarioError> {
    run_kind(cfg, ScenarioKind::SpinMeter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_fit_recovers_slope() {
        let t: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
        let y: Vec<f64> = t.iter().map(|x| 2.0 - 0.75 * x).collect();
        let (r, se) = fit_line(&t, &y);
        assert!((r + 0.75).abs() < 1e-14);
        assert!(se < 1e-14);
    }

    #[test]
    fn trapezoid_rules() {
        let t = [0.0, 1.0, 2.0];
        let v = [0.0, 1.0, 2.0];
        assert_eq!(trapezoid_mean(&t, &v), 1.0);
        assert_eq!(cumulative_trapezoid(&t, &v), vec![0.0, 0.5, 2.0]);
    }

    #[test]
    fn wrong_scenario_is_rejected() {
        let cfg = ScenarioConfig::preset(ScenarioKind::SpinMeter);
        assert!(matches!(free_classical(&cfg), Err(ScenarioError::Config(_))));
    }
}
