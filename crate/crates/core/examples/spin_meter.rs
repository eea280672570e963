//! Spin meter: up and down states push the pointer by +-gT/2, a tilted spin
//! gives the weighted average while S3 stays fixed.
//!
//! cargo run --release --example spin_meter

use kvn_core::representation::QuantumInit;
use kvn_core::scenarios::{spin_meter, InitialState, ScenarioConfig, ScenarioKind};

fn main() {
    let base = ScenarioConfig::preset(ScenarioKind::SpinMeter);
    let half_gt = base.g * base.duration() / 2.0;
    println!("g T / 2 = {half_gt:.6}");
    for theta in [0.0, std::f64::consts::FRAC_PI_3, std::f64::consts::FRAC_PI_2, std::f64::consts::PI] {
        let cfg = ScenarioConfig {
            initial: InitialState { quantum: Some(QuantumInit::Spin { theta, phi: 0.0 }), ..base.initial },
            ..base.clone()
        };
        let r = spin_meter(&cfg).expect("spin run");
        let ro = r.readout.as_ref().unwrap();
        let s3 = r.channel("s3");
        let induced = ro.pointer_shift - ro.free_drift * cfg.duration();
        println!(
            "theta {theta:.4}: shift {induced:+.6}, <s3> {:+.6} (cos/2 = {:+.6}), s3 drift {:.1e}",
            ro.inferred.unwrap(),
            theta.cos() / 2.0,
            s3.iter().map(|x| (x - s3[0]).abs()).fold(0.0, f64::max)
        );
    }
}
