//! Momentum meter calibration: the oscillator is switched off so p is
//! conserved and the pointer drift must return p0. Also shows the readout
//! at the default oscillating preset.
//!
//! cargo run --release --example momentum_meter

use kvn_core::scenarios::{momentum_meter, RunResult, ScenarioConfig, ScenarioKind};

fn show(label: &str, r: &RunResult) {
    let ro = r.readout.as_ref().expect("meter readout");
    println!("{label}");
    println!("  pointer {} shift {:.6}, free drift {:.6}", ro.pointer, ro.pointer_shift, ro.free_drift);
    println!("  inferred {} = {:.6} (pointer slope {:.6})", ro.quantity, ro.inferred.unwrap_or(f64::NAN), ro.fitted_rate);
    for c in &r.checks {
        println!("  check {:<24} {:.6} vs {:.6} ± {:.0e} {}", c.name, c.value, c.expected, c.tolerance, if c.passed { "ok" } else { "FAIL" });
    }
}

fn main() {
    let cal = ScenarioConfig::momentum_calibration();
    show("calibration (omega = 0, p0 = 1.5)", &momentum_meter(&cal).expect("calibration run"));

    let osc = ScenarioConfig::reduced(ScenarioKind::MomentumMeter);
    // with omega > 0 the meter averages <p> over the run
    show("\noscillating preset, reduced grid", &momentum_meter(&osc).expect("meter run"));
}
