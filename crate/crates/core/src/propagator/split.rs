//! Strang split-operator stepper.
//!
//! The Hamiltonian is partitioned into three exactly exponentiable parts:
//!
//! * quantum: terms acting only on the quantum factor (dense block);
//! * classical: `f(x⊥)·T` with `T` a tilde generator and `x⊥` the
//!   coordinate it does not differentiate, an advection along one axis;
//! * coupling: `Q·T` with `Q` a quantum operator, an advection whose
//!   velocity is an eigenvalue of `Q`.
//!
//! One step is `Q(dt/2) C(dt/2) K(dt) C(dt/2) Q(dt/2)`. The state is kept
//! in the eigenbasis of the coupling matrix, so the coupling is diagonal
//! in the quantum index; adjacent quantum half-steps between samples are
//! fused into one full step.

use ndarray::{Array1, Array2, Array3};
use num_complex::Complex64;
use num_traits::Zero;

use super::config::{MonitorLimits, PropagatorConfig};
use super::error::{MonitorKind, MonitorTrip, PropagatorError};
use super::linalg::{adjoint, hermitian_eigen, hermiticity_defect, max_off_diagonal, unitary_from_eigen};
use super::timeseries::TimeSeries;
use crate::algebra::{to_c64, GeneratorId, OperatorPoly};
use crate::representation::{
    apply_quantum, filter_axis, tilde_symbol_sign, ExpectationCache, HybridState, MatrixOperator, Representation,
};

/// Classical axis index in the state layout.
fn along_axis(tilde: GeneratorId) -> usize {
    match tilde {
        GeneratorId::BTilde => 0,
        GeneratorId::ATilde => 1,
        _ => unreachable!(),
    }
}

/// Coordinate that commutes with a tilde generator.
fn perpendicular(tilde: GeneratorId) -> GeneratorId {
    match tilde {
        GeneratorId::ATilde => GeneratorId::A,
        GeneratorId::BTilde => GeneratorId::B,
        _ => unreachable!(),
    }
}

#[derive(Clone, Debug)]
struct ClassicalPart {
    tilde: GeneratorId,
    /// `Σ c·x⊥^k` as `(c, k)` pairs.
    velocity: Vec<(f64, u32)>,
}

#[derive(Clone, Debug)]
struct CouplingPart {
    tilde: GeneratorId,
    matrix: Array2<Complex64>,
}

/// A Hamiltonian partitioned for the split stepper.
#[derive(Clone, Debug)]
pub struct SplitHamiltonian {
    rep: Representation,
    quantum: Option<Array2<Complex64>>,
    classical: Option<ClassicalPart>,
    coupling: Option<CouplingPart>,
}

impl SplitHamiltonian {
    pub fn new(h: &OperatorPoly, rep: &Representation) -> Result<Self, PropagatorError> {
        let d = rep.quantum.dim();
        let mut quantum: Option<Array2<Complex64>> = None;
        let mut classical: Option<ClassicalPart> = None;
        let mut coupling: Option<CouplingPart> = None;
        for (word, coeff) in h.terms() {
            let reject = || PropagatorError::NonExponentiable(OperatorPoly::monomial(coeff.clone(), word.clone()).to_string());
            let (qw, cw) = word.split_sectors();
            let mut qmat = Array2::<Complex64>::eye(d);
            for g in qw.expand() {
                let m = rep
                    .quantum
                    .matrix(g)
                    .ok_or(crate::representation::RepresentationError::UnknownGenerator(g))?;
                qmat = qmat.dot(m);
            }
            let c = to_c64(coeff);
            if cw.is_identity() {
                let acc = quantum.get_or_insert_with(|| Array2::zeros((d, d)));
                acc.scaled_add(c, &qmat);
                continue;
            }
            let tildes: Vec<_> = cw.runs().iter().filter(|(g, _)| g.is_tilde()).collect();
            let [&(tilde, 1)] = tildes.as_slice() else { return Err(reject()) };
            let perp = perpendicular(tilde);
            let perp_pow = cw.power_of(perp);
            if cw.degree() != 1 + perp_pow {
                return Err(reject());
            }
            if qw.is_identity() {
                if !coeff.im.is_zero() {
                    return Err(reject());
                }
                let part = classical.get_or_insert_with(|| ClassicalPart { tilde, velocity: Vec::new() });
                if part.tilde != tilde {
                    return Err(reject());
                }
                part.velocity.push((c.re, perp_pow));
            } else {
                if perp_pow != 0 {
                    return Err(reject());
                }
                let part = coupling.get_or_insert_with(|| CouplingPart { tilde, matrix: Array2::zeros((d, d)) });
                if part.tilde != tilde {
                    return Err(reject());
                }
                part.matrix.scaled_add(c, &qmat);
            }
        }
        for m in quantum.iter().chain(coupling.iter().map(|k| &k.matrix)) {
            let scale = m.iter().map(|v| v.norm()).fold(1.0, f64::max);
            let defect = hermiticity_defect(m);
            if defect > 1e-12 * scale {
                return Err(PropagatorError::NotHermitian(defect));
            }
        }
        Ok(SplitHamiltonian { rep: rep.clone(), quantum, classical, coupling })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }
}

/// One stage of a step, pre-exponentiated for a fixed `dt`.
enum Stage {
    Diagonal(Array1<Complex64>),
    Dense(Array2<Complex64>),
    /// Per-line spectral phases `[perp, quantum, mode]` along an axis.
    Advect { along: usize, phases: Array3<Complex64> },
}

impl Stage {
    fn apply(&self, amps: &mut Array3<Complex64>, rep: &Representation) {
        match self {
            Stage::Diagonal(phases) => {
                for mut cell in amps.lanes_mut(ndarray::Axis(2)) {
                    cell.zip_mut_with(phases, |v, p| *v *= p);
                }
            }
            Stage::Dense(u) => apply_quantum(amps, u),
            Stage::Advect { along, phases } => {
                let axis = if *along == 0 { &rep.classical.a_axis } else { &rep.classical.b_axis };
                filter_axis(amps, axis, *along, |ip, iq, m| phases[[ip, iq, m]]);
            }
        }
    }
}

/// Velocity of each line of an advection along `tilde`'s axis, indexed by
/// `[perp, eigen]`.
fn line_velocities(
    rep: &Representation,
    tilde: GeneratorId,
    classical: Option<&ClassicalPart>,
    coupling_eigs: Option<&Array1<f64>>,
) -> Array2<f64> {
    let grid = &rep.classical;
    let perp_coords = if along_axis(tilde) == 0 { grid.b_axis.coords() } else { grid.a_axis.coords() };
    let d = rep.quantum.dim();
    Array2::from_shape_fn((perp_coords.len(), d), |(ip, e)| {
        let x = perp_coords[ip];
        let vc: f64 = classical.map_or(0.0, |c| c.velocity.iter().map(|&(k, p)| k * x.powi(p as i32)).sum());
        let vk = coupling_eigs.map_or(0.0, |l| l[e]);
        vc + vk
    })
}

fn advection_stage(rep: &Representation, tilde: GeneratorId, velocity: &Array2<f64>, tau: f64) -> Stage {
    let along = along_axis(tilde);
    let axis = if along == 0 { &rep.classical.a_axis } else { &rep.classical.b_axis };
    let sign = tilde_symbol_sign(tilde);
    let k = axis.wavenumbers();
    let (np, d) = velocity.dim();
    let phases = Array3::from_shape_fn((np, d, k.len()), |(ip, e, m)| {
        Complex64::from_polar(1.0, -tau * sign * k[m] * velocity[[ip, e]])
    });
    Stage::Advect { along, phases }
}

/// Pre-built stages for a fixed `dt`.
///
/// A step is `outer(dt/2) inner(dt) outer(dt/2)`. The quantum stage and the
/// classical advection commute, so when the classical and coupling
/// advections run along different axes the classical half-steps are moved
/// into `outer` next to the quantum half-steps; otherwise the classical
/// advection is fused into the coupling one. Adjacent outer half-steps of
/// consecutive steps are applied as one full step.
struct Stepper {
    /// Coupling eigenbasis (columns); `None` means the identity.
    basis: Option<Array2<Complex64>>,
    outer_half: Vec<Stage>,
    outer_full: Vec<Stage>,
    inner: Vec<Stage>,
}

impl Stepper {
    fn new(h: &SplitHamiltonian, dt: f64) -> Self {
        let rep = &h.rep;
        let coupling_eigen = h.coupling.as_ref().map(|k| hermitian_eigen(&k.matrix));
        let quantum_eigen = h.quantum.as_ref().map(hermitian_eigen);
        let basis = match (&coupling_eigen, &quantum_eigen) {
            (Some((_, w)), _) => Some(w.clone()),
            (None, Some((_, w))) => Some(w.clone()),
            (None, None) => None,
        };
        let quantum_stage = |tau: f64| -> Option<Stage> {
            let (vals, vecs) = quantum_eigen.as_ref()?;
            let u = unitary_from_eigen(vals, vecs, tau);
            let u = match &basis {
                Some(w) => adjoint(w).dot(&u).dot(w),
                None => u,
            };
            if max_off_diagonal(&u) < 1e-12 {
                Some(Stage::Diagonal(u.diag().mapv(|z| z / z.norm())))
            } else {
                Some(Stage::Dense(u))
            }
        };
        let coupling_vals = coupling_eigen.as_ref().map(|(l, _)| l);
        let outer = |tau: f64| -> Vec<Stage> { quantum_stage(tau).into_iter().collect() };
        let mut outer_half = outer(dt / 2.0);
        let mut outer_full = outer(dt);
        let mut inner = Vec::new();
        match (&h.classical, &h.coupling) {
            (Some(c), Some(k)) if c.tilde == k.tilde => {
                let v = line_velocities(rep, c.tilde, Some(c), coupling_vals);
                inner.push(advection_stage(rep, c.tilde, &v, dt));
            }
            (Some(c), Some(k)) => {
                let vc = line_velocities(rep, c.tilde, Some(c), None);
                let vk = line_velocities(rep, k.tilde, None, coupling_vals);
                outer_half.push(advection_stage(rep, c.tilde, &vc, dt / 2.0));
                outer_full.push(advection_stage(rep, c.tilde, &vc, dt));
                inner.push(advection_stage(rep, k.tilde, &vk, dt));
            }
            (Some(c), None) => {
                let v = line_velocities(rep, c.tilde, Some(c), None);
                inner.push(advection_stage(rep, c.tilde, &v, dt));
            }
            (None, Some(k)) => {
                let v = line_velocities(rep, k.tilde, None, coupling_vals);
                inner.push(advection_stage(rep, k.tilde, &v, dt));
            }
            (None, None) => {}
        }
        Stepper { basis, outer_half, outer_full, inner }
    }

    fn to_working(&self, amps: &mut Array3<Complex64>) {
        if let Some(w) = &self.basis {
            apply_quantum(amps, &adjoint(w));
        }
    }

    fn to_original(&self, amps: &Array3<Complex64>) -> Array3<Complex64> {
        let mut out = amps.clone();
        if let Some(w) = &self.basis {
            apply_quantum(&mut out, w);
        }
        out
    }

    /// Advances `steps` full Strang steps.
    fn advance(&self, amps: &mut Array3<Complex64>, rep: &Representation, steps: usize) {
        if steps == 0 {
            return;
        }
        let run = |stages: &[Stage], amps: &mut Array3<Complex64>| stages.iter().for_each(|s| s.apply(amps, rep));
        run(&self.outer_half, amps);
        for s in 0..steps {
            run(&self.inner, amps);
            if s + 1 < steps {
                run(&self.outer_full, amps);
            }
        }
        run(&self.outer_half, amps);
    }
}

/// A named expectation-value channel, recorded as `Re <op>`.
#[derive(Clone, Debug)]
pub struct Channel {
    pub label: String,
    pub op: MatrixOperator,
}

/// Largest values seen by the runtime guards.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize)]
pub struct Diagnostics {
    pub max_boundary_mass: f64,
    pub max_quantum_edge_mass: f64,
    pub max_norm_drift: f64,
}

impl Diagnostics {
    /// Updates the maxima from `state` at time `t`; errors if a limit is exceeded.
    pub fn observe(
        &mut self,
        state: &HybridState,
        rep: &Representation,
        initial_norm: f64,
        t: f64,
        limits: &MonitorLimits,
    ) -> Result<(), PropagatorError> {
        let boundary = state.classical_boundary_mass();
        let edge = state.quantum_edge_mass(&rep.quantum);
        let drift = (state.norm_sqr() - initial_norm).abs();
        self.max_boundary_mass = self.max_boundary_mass.max(boundary);
        self.max_quantum_edge_mass = self.max_quantum_edge_mass.max(edge);
        self.max_norm_drift = self.max_norm_drift.max(drift);
        let trip = |kind, value, threshold| Err(PropagatorError::Monitor(MonitorTrip { kind, time: t, value, threshold }));
        // A q-grid edge counts as leakage; a Fock edge as truncation.
        let edge_kind = match rep.quantum {
            crate::representation::QuantumSector::Grid { .. } => MonitorKind::Leakage,
            _ => MonitorKind::Truncation,
        };
        let edge_limit = if edge_kind == MonitorKind::Leakage { limits.boundary_mass } else { limits.truncation_mass };
        if boundary > limits.boundary_mass {
            return trip(MonitorKind::Leakage, boundary, limits.boundary_mass);
        }
        if edge > edge_limit {
            return trip(edge_kind, edge, edge_limit);
        }
        if drift > limits.norm_drift {
            return trip(MonitorKind::NormDrift, drift, limits.norm_drift);
        }
        Ok(())
    }
}

/// Trajectory plus the state at the final time.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub series: TimeSeries,
    pub final_state: HybridState,
    pub diagnostics: Diagnostics,
}

pub(crate) fn sample(channels: &[Channel], state: &HybridState) -> Result<Vec<f64>, PropagatorError> {
    let cache = ExpectationCache::new(state);
    channels.iter().map(|c| Ok(c.op.expectation_cached(&cache)?.re)).collect()
}

/// Evolves `state` with the Strang splitting of `h`, sampling `channels`
/// at the configured stride and checking the runtime guards at every
/// sample.
pub fn evolve_split(
    state: &HybridState,
    h: &SplitHamiltonian,
    cfg: &PropagatorConfig,
    channels: &[Channel],
    limits: &MonitorLimits,
) -> Result<Evolution, PropagatorError> {
    cfg.validate()?;
    let rep = &h.rep;
    if state.amplitudes().dim() != rep.shape() {
        return Err(crate::representation::RepresentationError::DimensionMismatch { expected: rep.dim(), got: state.dim() }.into());
    }
    let stepper = Stepper::new(h, cfg.dt);
    let labels: Vec<String> = channels.iter().map(|c| c.label.clone()).collect();
    let mut series = TimeSeries::new(&labels);
    let mut diagnostics = Diagnostics::default();
    let initial_norm = state.norm_sqr();

    let mut work = state.amplitudes().clone();
    stepper.to_working(&mut work);
    let mut done = 0usize;
    let mut current = state.clone();
    for step in cfg.record_steps() {
        stepper.advance(&mut work, rep, step - done);
        done = step;
        current = state.with_amplitudes(stepper.to_original(&work));
        let t = step as f64 * cfg.dt;
        diagnostics.observe(&current, rep, initial_norm, t, limits)?;
        series.push(t, &sample(channels, &current)?);
    }
    Ok(Evolution { series, final_state: current, diagnostics })
}

/// Returns only the final state, for convergence studies.
pub fn split_final_state(state: &HybridState, h: &SplitHamiltonian, dt: f64, n_steps: usize) -> HybridState {
    let stepper = Stepper::new(h, dt);
    let mut work = state.amplitudes().clone();
    stepper.to_working(&mut work);
    stepper.advance(&mut work, &h.rep, n_steps);
    state.with_amplitudes(stepper.to_original(&work))
}

/// True if every Hamiltonian term could be split.
pub fn is_splittable(h: &OperatorPoly, rep: &Representation) -> bool {
    SplitHamiltonian::new(h, rep).is_ok()
}
