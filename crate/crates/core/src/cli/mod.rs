//! The `kvn` command-line front end.
//!
//! | command  | exit codes |
//! |----------|------------|
//! | `derive` | 0 all printed equations match, 3 mismatch reported, 1 config, 2 internal |
//! | `evolve` | 0 done, 1 config, 2 I/O or internal, 4 monitor trip |
//! | `verify` | 0 all suites pass, 5 any failure |
//! | `sweep`  | as `evolve`; 4 if any point trips a monitor |
//!
//! `KVN_THREADS` caps the worker pool.

mod output;
mod sweep;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use output::{engine_info, result_json, write_run, CliError, ConfigFile, EngineInfo, Status};
pub use sweep::{cartesian, run_sweep, sweep_configs, SweepAxis, SweepPoint};
pub use verify::{algebra_suite, run_suites, Level, Suite, SuiteCheck, VerifyReport};

use crate::algebra::Algebra;
use crate::scenarios::{derive_eom_report, run_scenario, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_MONITOR: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

const DEFAULT_OUT: &str = "kvn-out";

#[derive(Debug, Parser)]
#[command(name = "kvn", version, about = "Hybrid quantum-classical dynamics in the Koopman-von Neumann picture")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the equation-of-motion report for a scenario as JSON.
    Derive { config: PathBuf },
    /// Evolve a scenario and write trajectory.csv and result.json.
    Evolve {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
    },
    /// Evolve every point of a parameter grid, one directory per point.
    Sweep {
        config: PathBuf,
        /// `dotted.key=v1,v2,...`; repeat for a cartesian product.
        #[arg(long = "param", required = true)]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn config_error(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "kvn: {e}");
    match e {
        CliError::Config(_) => EXIT_CONFIG,
        CliError::Scenario(s) if s.is_config() => EXIT_CONFIG,
        _ => EXIT_INTERNAL,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("KVN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Runs `kvn` with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    configure_threads();
    match cli.command {
        Command::Derive { config } => derive(&config, stdout, stderr),
        Command::Evolve { config, out } => evolve(&config, out, stdout, stderr),
        Command::Verify { level } => verify(level, Algebra::standard(), stdout),
        Command::Sweep { config, params, out } => sweep(&config, &params, out, stdout, stderr),
    }
}

pub fn run_from_env() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn derive(path: &std::path::Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let file = match ConfigFile::load(path) {
        Ok(f) => f,
        Err(e) => return config_error(stderr, &e),
    };
    let params = match Params::from_config(&file.config) {
        Ok(p) => p,
        Err(e) => return config_error(stderr, &CliError::Scenario(e)),
    };
    let report = derive_eom_report(file.config.scenario, &params);
    let mut doc = json!({ "engine": engine_info(), "config": file.config.to_json() });
    if let (Value::Object(map), Ok(Value::Object(body))) = (&mut doc, serde_json::to_value(&report)) {
        map.extend(body);
    }
    let _ = write!(stdout, "{}", output::to_pretty(&doc));
    if report.all_match() {
        EXIT_OK
    } else {
        let flagged: Vec<&str> = report.mismatches().iter().map(|e| e.variable.as_str()).collect();
        let _ = writeln!(stderr, "kvn: engine differs from the printed equation for {}", flagged.join(", "));
        EXIT_MISMATCH
    }
}

fn evolve(path: &std::path::Path, out: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let file = match ConfigFile::load(path) {
        Ok(f) => f,
        Err(e) => return config_error(stderr, &e),
    };
    let dir = out.or(file.out).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let outcome = run_scenario(&file.config);
    if let Err(e) = &outcome {
        if e.monitor_trip().is_none() {
            let _ = writeln!(stderr, "kvn: {e}");
            return if e.is_config() { EXIT_CONFIG } else { EXIT_INTERNAL };
        }
    }
    match write_run(&dir, &file.config, &outcome) {
        Ok(Status::MonitorTrip) => {
            let _ = writeln!(stderr, "kvn: {}", outcome.err().map(|e| e.to_string()).unwrap_or_default());
            EXIT_MONITOR
        }
        Ok(status) => {
            let _ = writeln!(stdout, "{}: {:?}", dir.display(), status);
            EXIT_OK
        }
        Err(e) => config_error(stderr, &e),
    }
}

/// Runs the suites against `algebra` and prints the JSON report.
pub fn verify(level: Level, algebra: &Algebra, stdout: &mut dyn Write) -> i32 {
    let report = run_suites(level, algebra);
    let doc = json!({ "engine": engine_info(), "report": report });
    let _ = write!(stdout, "{}", output::to_pretty(&doc));
    if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

fn sweep(
    path: &std::path::Path,
    params: &[String],
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let file = match ConfigFile::load(path) {
        Ok(f) => f,
        Err(e) => return config_error(stderr, &e),
    };
    let axes = match params.iter().map(|p| SweepAxis::parse(p)).collect::<Result<Vec<_>, _>>() {
        Ok(a) => a,
        Err(e) => return config_error(stderr, &e),
    };
    let dir = out.or(file.out).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    match run_sweep(&file.config, &axes, &dir) {
        Ok(points) => {
            let tripped = points.iter().filter(|p| p.status == Status::MonitorTrip).count();
            let _ = writeln!(stdout, "{}: {} points, {} tripped", dir.display(), points.len(), tripped);
            if tripped > 0 {
                EXIT_MONITOR
            } else {
                EXIT_OK
            }
        }
        Err(e) => config_error(stderr, &e),
    }
}
