//! Back-action of the momentum meter: <q> follows the decoupled run while
//! Var(q) at the final time grows with g.
//!
//! cargo run --release --example disturbance_sweep [g ...]

use kvn_core::scenarios::{disturbance_study, ScenarioConfig, ScenarioKind};

fn main() {
    let mut couplings: Vec<f64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if couplings.is_empty() {
        couplings = vec![0.1, 0.2, 0.3, 0.4];
    }
    let report = disturbance_study(&ScenarioConfig::reduced(ScenarioKind::MomentumMeter), &couplings)
        .expect("disturbance study");
    println!("Var(q) at g = 0: {:.6}", report.baseline_var_q);
    println!("{:>6} {:>12} {:>12} {:>12}", "g", "Var(q)", "excess", "|d<q>|");
    for p in &report.points {
        println!("{:>6.3} {:>12.6} {:>12.6} {:>12.1e}", p.g, p.var_q_final, p.var_q_excess, p.mean_q_deviation);
    }
}
