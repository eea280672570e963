//! Energy meter on oscillator eigenstates: the pointer a drifts at -g E_n.
//!
//! cargo run --release --example energy_meter [max_level]

use kvn_core::representation::QuantumInit;
use kvn_core::scenarios::{energy_meter, InitialState, ScenarioConfig, ScenarioKind};

fn main() {
    let top: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let base = ScenarioConfig::reduced(ScenarioKind::EnergyMeter);
    let omega = base.omega.unwrap();
    println!("{:>3} {:>12} {:>12} {:>10}", "n", "inferred", "(n+1/2)w", "fock edge");
    for n in 0..=top {
        let cfg = ScenarioConfig {
            initial: InitialState { quantum: Some(QuantumInit::Number { n }), ..base.initial },
            ..base.clone()
        };
        match energy_meter(&cfg) {
            Ok(r) => println!(
                "{n:>3} {:>12.6} {:>12.6} {:>10.1e}",
                r.inferred().unwrap(),
                (n as f64 + 0.5) * omega,
                r.diagnostics.max_quantum_edge_mass
            ),
            Err(e) => println!("{n:>3} {e}"),
        }
    }
}
