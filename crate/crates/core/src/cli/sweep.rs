use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::output::{engine_info, to_pretty, write_run, CliError, Status};
use crate::scenarios::{run_scenario, ScenarioConfig};

/// One `--param path=v1,v2,...` axis.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepAxis {
    pub path: Vec<String>,
    pub values: Vec<Value>,
}

impl SweepAxis {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let (path, values) =
            spec.split_once('=').ok_or_else(|| CliError::Config(format!("`{spec}`: expected key=v1,v2,...")))?;
        let path: Vec<String> = path.split('.').map(str::to_string).collect();
        if path.iter().any(|p| p.is_empty()) {
            return Err(CliError::Config(format!("`{spec}`: empty path segment")));
        }
        let values: Vec<Value> = values
            .split(',')
            .map(|v| serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string())))
            .collect();
        Ok(SweepAxis { path, values })
    }

    fn key(&self) -> String {
        self.path.join(".")
    }
}

fn set_path(doc: &mut Value, path: &[String], value: Value) -> Result<(), CliError> {
    let (last, parents) = path.split_last().expect("nonempty path");
    let mut node = doc;
    for key in parents {
        let map = node.as_object_mut().ok_or_else(|| CliError::Config(format!("`{key}` is not an object")))?;
        let child = map.entry(key.clone()).or_insert(Value::Null);
        if child.is_null() {
            *child = Value::Object(Default::default());
        }
        node = child;
    }
    node.as_object_mut()
        .ok_or_else(|| CliError::Config(format!("cannot set `{last}` on a non-object")))?
        .insert(last.clone(), value);
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub index: usize,
    pub dir: String,
    pub assignments: Vec<(String, Value)>,
    pub status: Status,
    pub inferred: Option<f64>,
}

/// Every combination of axis values, first axis slowest.
pub fn cartesian(axes: &[SweepAxis]) -> Vec<Vec<(String, Value)>> {
    axes.iter().fold(vec![vec![]], |acc, axis| {
        acc.into_iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push((axis.key(), v.clone()));
                    next
                })
            })
            .collect()
    })
}

/// Resolves one config per grid point. Assignments apply to the fully
/// resolved base config, so nested keys such as `initial.quantum.p0` work.
pub fn sweep_configs(base: &ScenarioConfig, axes: &[SweepAxis]) -> Result<Vec<(Vec<(String, Value)>, ScenarioConfig)>, CliError> {
    cartesian(axes)
        .into_iter()
        .map(|assignments| {
            let mut doc = base.to_json();
            for (key, value) in &assignments {
                let path: Vec<String> = key.split('.').map(str::to_string).collect();
                set_path(&mut doc, &path, value.clone())?;
            }
            let cfg = ScenarioConfig::from_json(&doc.to_string())
                .map_err(|e| CliError::Config(format!("sweep point {assignments:?}: {e}")))?;
            Ok((assignments, cfg))
        })
        .collect()
}

/// Runs all points in parallel and writes `point_NNN/` plus `sweep.json`.
pub fn run_sweep(base: &ScenarioConfig, axes: &[SweepAxis], out: &Path) -> Result<Vec<SweepPoint>, CliError> {
    let configs = sweep_configs(base, axes)?;
    fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let points = configs
        .par_iter()
        .enumerate()
        .map(|(index, (assignments, cfg))| {
            let dir = format!("point_{index:03}");
            let outcome = run_scenario(cfg);
            if let Err(e) = &outcome {
                if e.monitor_trip().is_none() {
                    return Err(CliError::Internal(format!("{dir}: {e}")));
                }
            }
            let status = write_run(&out.join(&dir), cfg, &outcome)?;
            let inferred = outcome.as_ref().ok().and_then(|r| r.inferred());
            Ok(SweepPoint { index, dir, assignments: assignments.clone(), status, inferred })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let doc = json!({
        "engine": engine_info(),
        "config": base.to_json(),
        "axes": axes.iter().map(|a| json!({ "key": a.key(), "values": a.values })).collect::<Vec<_>>(),
        "points": points,
    });
    let path = out.join("sweep.json");
    fs::write(&path, to_pretty(&doc)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::ScenarioKind;

    #[test]
    fn parses_axis_values() {
        let axis = SweepAxis::parse("initial.quantum.coherent.p0=1,1.5").unwrap();
        assert_eq!(axis.path, ["initial", "quantum", "coherent", "p0"]);
        assert_eq!(axis.values, [json!(1), json!(1.5)]);
        assert!(SweepAxis::parse("g").is_err());
    }

    #[test]
    fn product_order_and_nested_assignment() {
        let axes = [SweepAxis::parse("g=0.1,0.2").unwrap(), SweepAxis::parse("initial.quantum.coherent.p0=1,2").unwrap()];
        let base = ScenarioConfig::reduced(ScenarioKind::MomentumMeter);
        let configs = sweep_configs(&base, &axes).unwrap();
        assert_eq!(configs.len(), 4);
        assert_eq!(configs[1].1.g, 0.1);
        assert_eq!(
            configs[1].1.initial.quantum,
            Some(crate::representation::QuantumInit::Coherent { q0: 0.0, p0: 2.0 })
        );
        assert_eq!(configs[2].1.g, 0.2);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let axes = [SweepAxis::parse("gg=1").unwrap()];
        assert!(sweep_configs(&ScenarioConfig::preset(ScenarioKind::SpinMeter), &axes).is_err());
    }
}
