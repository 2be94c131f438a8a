//! Batch front-end for the membrane solvers: configuration parsing, run
//! orchestration, verification suites and bulk field snapshots.
//!
//! Exit codes: 0 success, 1 runtime or i/o failure, 2 invalid configuration or
//! input file, 3 run aborted by a tubular-neighbourhood violation, 4 failed
//! verification.

pub mod config;
pub mod error;
pub mod io;
pub mod simulate;
pub mod snapshot;
pub mod verify;

pub use config::{Document, InitialCondition, Integrator, RunConfig, VerifyConfig};
pub use error::{CliError, CliResult};
pub use simulate::{cmd_simulate, simulate, RunSummary};
pub use snapshot::{cmd_snapshot_fields, parse_planes, Plane};
pub use verify::{cmd_verify, run_suite, ReportRow, Suite};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "VESIFLOW_THREADS";

/// Sizes the global worker pool from [`THREADS_ENV`] if it is set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} = {raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}
