use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::StructureTable;
use crate::scenarios::{RunResult, ScenarioConfig, ScenarioError};

/// Build identity embedded in every output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineInfo {
    pub name: &'static str,
    pub version: &'static str,
    /// SHA-256 of the version string and the canonical structure table.
    pub algebra_hash: String,
}

pub fn engine_info() -> EngineInfo {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(b"\n");
    h.update(StructureTable::standard().canonical_text().as_bytes());
    let algebra_hash = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    EngineInfo { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), algebra_hash }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// A config file: the scenario config plus an optional `out` directory.
#[derive(Clone, Debug)]
pub struct ConfigFile {
    pub config: ScenarioConfig,
    pub out: Option<PathBuf>,
    /// The file contents with `out` removed, as given.
    pub raw: Value,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut raw: Value = serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid JSON: {e}")))?;
        let out = match raw.as_object_mut().and_then(|m| m.remove("out")) {
            None => None,
            Some(Value::String(s)) => Some(PathBuf::from(s)),
            Some(other) => return Err(CliError::Config(format!("`out` must be a string, got {other}"))),
        };
        let config = ScenarioConfig::from_json(&raw.to_string()).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(ConfigFile { config, out, raw })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Run status written to `result.json`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ChecksFailed,
    MonitorTrip,
}

pub fn result_json(cfg: &ScenarioConfig, outcome: &Result<RunResult, ScenarioError>) -> (Status, Value) {
    let mut doc = Map::new();
    doc.insert("engine".into(), json!(engine_info()));
    doc.insert("config".into(), cfg.to_json());
    let status = match outcome {
        Ok(run) => {
            let status = if run.passed() { Status::Ok } else { Status::ChecksFailed };
            doc.insert("status".into(), json!(status));
            if let Some(r) = &run.readout {
                doc.insert(format!("inferred_{}", r.quantity), json!(r.inferred));
            }
            let body = serde_json::to_value(run).expect("run result serializes");
            if let Value::Object(fields) = body {
                doc.extend(fields.into_iter().filter(|(k, _)| k != "scenario"));
            }
            doc.insert("channels".into(), json!(run.series.labels().collect::<Vec<_>>()));
            status
        }
        Err(e) => {
            let trip = e.monitor_trip().expect("only monitor trips produce a result file");
            doc.insert("status".into(), json!(Status::MonitorTrip));
            doc.insert("error".into(), json!(e.to_string()));
            doc.insert("diagnostics".into(), json!({ "trip": trip }));
            Status::MonitorTrip
        }
    };
    (status, Value::Object(doc))
}

fn io(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Writes `trajectory.csv` (when the run completed) and `result.json` into `dir`.
pub fn write_run(dir: &Path, cfg: &ScenarioConfig, outcome: &Result<RunResult, ScenarioError>) -> Result<Status, CliError> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    if let Ok(run) = outcome {
        let path = dir.join("trajectory.csv");
        fs::write(&path, run.series.to_csv()).map_err(|e| io(&path, e))?;
    }
    let (status, doc) = result_json(cfg, outcome);
    let path = dir.join("result.json");
    fs::write(&path, to_pretty(&doc)).map_err(|e| io(&path, e))?;
    Ok(status)
}
