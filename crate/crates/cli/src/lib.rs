//! Configuration ingestion, command dispatch, figure presets and CSV/JSON
//! emission for `icobr-core`.

pub mod config;
pub mod error;
pub mod eval;
pub mod figures;
pub mod output;

pub use config::{Command, Format, RunConfig};
pub use error::CliError;
pub use eval::{evaluate_config, Outcome, Payload, Status, Table};

/// Worker pool honoring `ICOBR_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ICOBR_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("ICOBR_THREADS must be a positive integer (got `{v}`)")))?;
        if n == 0 {
            return Err(CliError::Usage("ICOBR_THREADS must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}
