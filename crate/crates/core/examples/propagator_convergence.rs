//! Split stepper against the dense exponential: the error drops by four per
//! halving of dt.
//!
//! cargo run --release --example propagator_convergence [halvings]

use kvn_core::propagator::dt_halving_study;
use kvn_core::representation::gaussian_state;
use kvn_core::scenarios::{build_representation, hamiltonian, Params, ScenarioConfig, ScenarioKind};

fn main() {
    let halvings: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for kind in [ScenarioKind::MomentumMeter, ScenarioKind::EnergyMeter] {
        let mut cfg = ScenarioConfig::reduced(kind);
        if let Some(t) = cfg.fock.as_mut() {
            t.n_levels = t.n_levels.min(8);
        }
        let rep = build_representation(&cfg).unwrap();
        let h = hamiltonian(kind, &Params::from_config(&cfg).unwrap());
        let state = gaussian_state(&rep, &cfg.initial.gaussian()).unwrap();
        let report = dt_halving_study(&state, &h, &rep, 1.0, 10, halvings).unwrap();
        println!("{} (dim {})", kind.name(), rep.dim());
        for (k, (dt, e)) in report.dts.iter().zip(&report.errors).enumerate() {
            let ratio = if k > 0 { format!("{:.3}", report.ratios[k - 1]) } else { String::new() };
            println!("  dt {dt:<10.6} error {e:.3e} {ratio}");
        }
    }
}
