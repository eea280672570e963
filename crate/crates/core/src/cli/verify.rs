//! Invariant suites behind `kvn verify`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    gen, generator_triples, imag_unit, poisson_bracket, rational, relation_failures, tilde_lift, Algebra,
    ClassicalPoly, GeneratorId, OperatorPoly,
};
use crate::propagator::{dt_halving_study, split_final_state, SplitHamiltonian};
use crate::representation::{
    assemble, build_classical_rep, build_quantum_fock, build_spin, gaussian_state, FockSpec, GaussianSpec,
    GridSpec, HybridState, MatrixOperator, QuantumInit, QuantumSector, Representation,
};
use crate::scenarios::{
    build_representation, hamiltonian, pointer, run_scenario, Params, ScenarioConfig, ScenarioKind,
};

use GeneratorId::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub passed: bool,
    pub checks: Vec<SuiteCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub level: &'static str,
    pub passed: bool,
    pub suites: Vec<Suite>,
}

#[derive(Default)]
struct Checks(Vec<SuiteCheck>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(SuiteCheck { name: name.into(), passed, detail: detail.into() });
    }

    fn below(&mut self, name: impl Into<String>, value: f64, limit: f64) {
        self.push(name, value <= limit, format!("{value:e} <= {limit:e}"));
    }

    fn result<E: std::fmt::Display>(&mut self, name: &str, r: Result<(), E>) {
        if let Err(e) = r {
            self.push(name, false, e.to_string());
        }
    }

    fn finish(self, name: &'static str) -> Suite {
        Suite { name, passed: self.0.iter().all(|c| c.passed), checks: self.0 }
    }
}

/// Runs every suite against `algebra`. Only the algebra suite depends on
/// the structure table passed in; the numerical suites use the build's own.
pub fn run_suites(level: Level, algebra: &Algebra) -> VerifyReport {
    let jobs: Vec<Box<dyn Fn() -> Suite + Sync + Send + '_>> = vec![
        Box::new(|| algebra_suite(algebra)),
        Box::new(representation_suite),
        Box::new(move || propagator_suite(level)),
        Box::new(move || scenario_suite(level)),
    ];
    let suites: Vec<Suite> = jobs.par_iter().map(|job| job()).collect();
    VerifyReport {
        level: match level {
            Level::Fast => "fast",
            Level::Full => "full",
        },
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

fn params(m: i64, mu: i64, omega: i64, g: (i64, i64)) -> Params {
    Params { m: rational(m, 1), mu: rational(mu, 1), omega: rational(omega, 1), g: rational(g.0, g.1), epsilon: rational(0, 1) }
}

fn classical_monomials(max_degree: u32) -> Vec<ClassicalPoly> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for ap in 0..=d {
            out.push(ClassicalPoly::monomial(rational(1, 1), ap, d - ap));
        }
    }
    out
}

pub fn algebra_suite(alg: &Algebra) -> Suite {
    let mut checks = Checks::default();
    let failures = relation_failures(alg);
    checks.push("relations", failures.is_empty(), failures.join("; "));

    let bad: Vec<String> = generator_triples()
        .into_iter()
        .filter_map(|(x, y, z)| {
            let j = alg.check_jacobi(x, y, z);
            (!j.is_zero()).then(|| format!("({x},{y},{z}) -> {j}"))
        })
        .collect();
    checks.push("jacobi", bad.is_empty(), format!("{} of 84 triples nonzero {}", bad.len(), bad.join("; ")));
    checks.push("antisymmetry", alg.table().is_antisymmetric(), "");

    let monos = classical_monomials(3);
    let mut broken = Vec::new();
    for f in &monos {
        for g in &monos {
            let lhs = tilde_lift(&poisson_bracket(f, g));
            let rhs = alg.commutator(&tilde_lift(f), &tilde_lift(g)) * (-imag_unit());
            if lhs != rhs {
                broken.push(format!("{} , {}", f.to_operator(), g.to_operator()));
            }
        }
    }
    checks.push(
        "lift_homomorphism",
        broken.is_empty(),
        format!("{} pairs, {} broken {}", monos.len() * monos.len(), broken.len(), broken.join("; ")),
    );

    let p = params(2, 3, 5, (1, 5));
    let inv = |r: i64| crate::algebra::real(rational(1, r));
    let free = hamiltonian(ScenarioKind::FreeClassical, &p);
    let meter = hamiltonian(ScenarioKind::MomentumMeter, &p);
    let cases = [
        ("free a", alg.heisenberg_rhs(&gen(A), &free), OperatorPoly::zero()),
        ("free b", alg.heisenberg_rhs(&gen(B), &free), gen(A) * inv(2)),
        ("free at", alg.heisenberg_rhs(&gen(ATilde), &free), OperatorPoly::zero()),
        ("meter a", alg.heisenberg_rhs(&gen(A), &meter), OperatorPoly::zero()),
        ("meter q", alg.heisenberg_rhs(&gen(QHat), &meter), gen(PHat) * inv(3) + gen(ATilde) * inv(5)),
    ];
    for (name, got, want) in cases {
        checks.push(format!("eom {name}"), got == want, format!("{got}"));
    }
    checks.finish("algebra")
}

fn gaussian(rep: &Representation, quantum: Option<QuantumInit>) -> Result<HybridState, String> {
    let spec = GaussianSpec { a0: 0.3, b0: -0.4, sigma_a: 1.0, sigma_b: 1.0, quantum };
    gaussian_state(rep, &spec).map_err(|e| e.to_string())
}

fn norm(s: &HybridState) -> f64 {
    s.norm_sqr().sqrt()
}

fn difference(x: &HybridState, y: &HybridState) -> f64 {
    let d = x.amplitudes() - y.amplitudes();
    (d.iter().map(|z| z.norm_sqr()).sum::<f64>() * x.measure()).sqrt()
}

/// `||([X,Y] - table(X,Y)) ψ|| / max(||XYψ||, ||ψ||)` over all supported pairs.
fn faithfulness(rep: &Representation, state: &HybridState) -> Result<(f64, String), String> {
    let alg = Algebra::standard();
    let gens: Vec<GeneratorId> = GeneratorId::ALL.iter().copied().filter(|&g| rep.supports(g)).collect();
    let mut worst = (0.0, String::new());
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            let e = |r: Result<HybridState, _>| r.map_err(|e: crate::representation::RepresentationError| e.to_string());
            let xy = e(MatrixOperator::apply_word(&[x, y], rep, state))?;
            let yx = e(MatrixOperator::apply_word(&[y, x], rep, state))?;
            let entry = alg.table().entry(x, y);
            let expected = e(assemble(&entry, rep).and_then(|op| op.apply(state)))?;
            let defect = xy.amplitudes() - yx.amplitudes() - expected.amplitudes();
            let defect = (defect.iter().map(|z| z.norm_sqr()).sum::<f64>() * state.measure()).sqrt();
            let rel = defect / norm(&xy).max(norm(state));
            if rel > worst.0 {
                worst = (rel, format!("[{x},{y}]"));
            }
        }
    }
    Ok(worst)
}

fn test_polys() -> Vec<OperatorPoly> {
    let half = crate::algebra::real(rational(1, 2));
    vec![
        gen(A) * gen(ATilde) * half.clone() + gen(PHat) * gen(ATilde),
        gen(QHat) * gen(QHat) * gen(BTilde) + gen(B) * gen(B) * gen(A) * half.clone(),
        gen(ATilde) * gen(ATilde) * gen(PHat) + gen(BTilde) * gen(B) * gen(QHat),
    ]
}

pub fn representation_suite() -> Suite {
    let mut checks = Checks::default();
    let r = (|| -> Result<(), String> {
        let grid = GridSpec { n_a: 64, n_b: 64, l_a: 8.0, l_b: 8.0 };
        let classical = build_classical_rep(grid).map_err(|e| e.to_string())?;
        let fock = build_quantum_fock(FockSpec { n_levels: 24, ..FockSpec::default() }).map_err(|e| e.to_string())?;
        let sectors = [
            ("classical", QuantumSector::Trivial, None),
            ("oscillator", fock, Some(QuantumInit::Coherent { q0: 0.5, p0: 0.3 })),
            ("spin", build_spin(), Some(QuantumInit::Spin { theta: 1.1, phi: 0.4 })),
        ];
        for (label, sector, init) in sectors {
            let rep = Representation::new(classical.clone(), sector);
            let state = gaussian(&rep, init)?;
            let (worst, pair) = faithfulness(&rep, &state)?;
            checks.below(format!("faithfulness {label} {pair}"), worst, 1e-6);
        }

        let small = build_classical_rep(GridSpec { n_a: 16, n_b: 16, l_a: 8.0, l_b: 8.0 }).map_err(|e| e.to_string())?;
        let fock = build_quantum_fock(FockSpec { n_levels: 4, ..FockSpec::default() }).map_err(|e| e.to_string())?;
        let rep = Representation::new(small, fock);
        let state = gaussian(&rep, Some(QuantumInit::Coherent { q0: 0.2, p0: -0.1 }))?;
        for (k, poly) in test_polys().iter().enumerate() {
            let op = assemble(poly, &rep).map_err(|e| e.to_string())?;
            let dense = op.materialize().map_err(|e| e.to_string())?;
            let composed = op.apply(&state).map_err(|e| e.to_string())?;
            let via_dense = state.from_vector(&dense.dot(&state.to_vector()));
            let rel = difference(&composed, &via_dense) / norm(&composed).max(1.0);
            checks.below(format!("dense vs composed #{k}"), rel, 1e-10);
        }
        Ok(())
    })();
    checks.result("representation setup", r);
    checks.finish("representation")
}

fn with_levels(kind: ScenarioKind, n_levels: usize) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::reduced(kind);
    if let Some(t) = cfg.fock.as_mut() {
        t.n_levels = n_levels;
    }
    cfg
}

/// Energy meter at dimension 1024 for the fast suites.
fn energy_small() -> ScenarioConfig {
    ScenarioConfig {
        grid: GridSpec { n_a: 16, n_b: 16, l_a: 4.0, l_b: 8.0 },
        fock: Some(crate::scenarios::Truncation { n_levels: 4, ..Default::default() }),
        ..ScenarioConfig::reduced(ScenarioKind::EnergyMeter)
    }
}

fn halving(checks: &mut Checks, label: &str, cfg: &ScenarioConfig, halvings: usize) -> Result<(), String> {
    let rep = build_representation(cfg).map_err(|e| e.to_string())?;
    let p = Params::from_config(cfg).map_err(|e| e.to_string())?;
    let h = hamiltonian(cfg.scenario, &p);
    let state = gaussian_state(&rep, &cfg.initial.gaussian()).map_err(|e| e.to_string())?;
    let report = dt_halving_study(&state, &h, &rep, 1.0, 10, halvings).map_err(|e| e.to_string())?;
    let detail = format!("dim {} errors {:?} ratios {:?}", rep.dim(), report.errors, report.ratios);
    checks.push(format!("dt halving {label}"), report.min_ratio() >= 3.7, detail);
    Ok(())
}

fn split_vs_dense(checks: &mut Checks, cfg: &ScenarioConfig) -> Result<(), String> {
    let rep = build_representation(cfg).map_err(|e| e.to_string())?;
    let p = Params::from_config(cfg).map_err(|e| e.to_string())?;
    let h = hamiltonian(cfg.scenario, &p);
    let state = gaussian_state(&rep, &cfg.initial.gaussian()).map_err(|e| e.to_string())?;
    let report = dt_halving_study(&state, &h, &rep, 1.0, 400, 0).map_err(|e| e.to_string())?;
    checks.below(format!("split vs dense {} dim {}", cfg.scenario.name(), rep.dim()), report.errors[0], 1e-5);
    Ok(())
}

fn norm_drift(checks: &mut Checks, cfg: &ScenarioConfig) -> Result<(), String> {
    let rep = build_representation(cfg).map_err(|e| e.to_string())?;
    let p = Params::from_config(cfg).map_err(|e| e.to_string())?;
    let split = SplitHamiltonian::new(&hamiltonian(cfg.scenario, &p), &rep).map_err(|e| e.to_string())?;
    let state = gaussian_state(&rep, &cfg.initial.gaussian()).map_err(|e| e.to_string())?;
    let end = split_final_state(&state, &split, 1e-4, 10_000);
    checks.below("norm drift over 1e4 steps", (end.norm_sqr() - state.norm_sqr()).abs(), 1e-9);
    Ok(())
}

pub fn propagator_suite(level: Level) -> Suite {
    let mut checks = Checks::default();
    let r = (|| -> Result<(), String> {
        let fast = [
            ScenarioConfig::reduced(ScenarioKind::FreeClassical),
            with_levels(ScenarioKind::MomentumMeter, 8),
            energy_small(),
            ScenarioConfig::reduced(ScenarioKind::SpinMeter),
        ];
        for cfg in &fast {
            split_vs_dense(&mut checks, cfg)?;
        }
        norm_drift(&mut checks, &energy_small())?;
        match level {
            Level::Fast => halving(&mut checks, "momentum_meter", &with_levels(ScenarioKind::MomentumMeter, 8), 1)?,
            Level::Full => {
                halving(&mut checks, "momentum_meter", &with_levels(ScenarioKind::MomentumMeter, 8), 3)?;
                halving(&mut checks, "energy_meter", &ScenarioConfig::reduced(ScenarioKind::EnergyMeter), 3)?;
                halving(&mut checks, "momentum_meter", &with_levels(ScenarioKind::MomentumMeter, 32), 2)?;
            }
        }
        Ok(())
    })();
    checks.result("propagator setup", r);
    checks.finish("propagator")
}

pub fn scenario_suite(level: Level) -> Suite {
    let mut checks = Checks::default();
    let mut configs: Vec<(String, ScenarioConfig)> = match level {
        Level::Fast => ScenarioKind::ALL.iter().map(|&k| (format!("{} reduced", k.name()), ScenarioConfig::reduced(k))).collect(),
        Level::Full => ScenarioKind::ALL.iter().map(|&k| (k.name().to_string(), ScenarioConfig::preset(k))).collect(),
    };
    if level == Level::Full {
        configs.push(("momentum calibration".into(), ScenarioConfig::momentum_calibration()));
    }
    configs.push(("momentum calibration reduced".into(), ScenarioConfig::momentum_calibration_reduced()));
    for (label, cfg) in configs {
        match run_scenario(&cfg) {
            Ok(result) => {
                let failed: Vec<String> = result
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("{} = {} (expected {} ± {:e})", c.name, c.value, c.expected, c.tolerance))
                    .collect();
                checks.push(format!("run {label}"), failed.is_empty(), failed.join("; "));
            }
            Err(e) => checks.push(format!("run {label}"), false, e.to_string()),
        }
    }

    let p = params(2, 3, 5, (1, 5));
    for kind in [ScenarioKind::MomentumMeter, ScenarioKind::EnergyMeter, ScenarioKind::SpinMeter] {
        let h = hamiltonian(kind, &p);
        checks.push(format!("{} hamiltonian not observable", kind.name()), !h.is_observable(), h.to_string());
        let rhs = Algebra::standard().heisenberg_rhs(&gen(pointer(kind)), &h);
        checks.push(format!("{} pointer eom observable", kind.name()), rhs.is_observable(), rhs.to_string());
    }
    checks.finish("scenarios")
}
