//! Heisenberg equations for each scenario, engine result next to the
//! printed form, with disagreements flagged.
//!
//! cargo run --example eom_report [scenario]

use kvn_core::scenarios::{derive_eom_report, Params, ScenarioConfig, ScenarioKind};

fn main() {
    let only = std::env::args().nth(1);
    for kind in ScenarioKind::ALL {
        if only.as_deref().is_some_and(|s| s != kind.name()) {
            continue;
        }
        let params = Params::from_config(&ScenarioConfig::preset(kind)).expect("preset parameters");
        let report = derive_eom_report(kind, &params);
        println!("{}  H = {}", kind.name(), report.hamiltonian);
        for e in &report.entries {
            let flag = match e.matches {
                Some(true) => "match",
                Some(false) => "FLAG",
                None => "-",
            };
            let printed = e.printed.unwrap_or("");
            let obs = if e.observable { "" } else { " (not observable)" };
            println!("  d{:<3} = {:<28} printed {:<14} {flag}{obs}", e.variable, e.engine_rhs, printed);
        }
        println!();
    }
}
