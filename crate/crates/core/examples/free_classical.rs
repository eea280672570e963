//! Free classical particle evolved as a phase-space wavefunction. The mean
//! position moves at a0/m and the mean momentum stays put.
//!
//! cargo run --release --example free_classical

use kvn_core::scenarios::{free_classical, ScenarioConfig, ScenarioKind};

fn main() {
    let cfg = ScenarioConfig::preset(ScenarioKind::FreeClassical);
    let r = free_classical(&cfg).expect("free run");
    let (a, b) = (r.channel("a"), r.channel("b"));
    let (a0, b0, m) = (cfg.initial.a0, cfg.initial.b0, cfg.m);
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "<a>", "<b>", "b0 + a0 t/m");
    let every = (r.series.times.len() / 10).max(1);
    for (k, t) in r.series.times.iter().enumerate().step_by(every) {
        println!("{t:>6.2} {:>12.8} {:>12.8} {:>12.8}", a[k], b[k], b0 + a0 * t / m);
    }
    println!("max boundary mass {:.2e}", r.diagnostics.max_boundary_mass);
}
