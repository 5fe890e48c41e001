//! Command-line driver for the frustrated-chain solver: config-driven
//! parameter sweeps, single-point runs, the dimer-point self check, and
//! plot-matrix emission.

pub mod config;
pub mod oracle;
pub mod plotdata;
pub mod record;
pub mod sweep;

/// Driver-level failures. Both variants map to exit code 1; solver failures
/// are not errors at this level, they are folded into the records and then
/// into the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration, arguments, or input files.
    Config(String),
    /// Filesystem failure around an input or output path.
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

/// Overrides the worker-thread count when set to a positive integer.
pub const THREADS_ENV: &str = "FBH_THREADS";

/// Applies [`THREADS_ENV`] to the global worker pool. Must run before any
/// parallel work; unset means one worker per core.
pub fn init_thread_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().unwrap_or(0);
    if threads == 0 {
        return Err(CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        )));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot configure {threads} worker threads: {e}")))
}
