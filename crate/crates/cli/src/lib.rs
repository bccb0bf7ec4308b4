//! Library half of the CLI: ingestion, command implementations, and report
//! rendering, kept separate from argument parsing so integration tests can
//! exercise them directly.

pub mod commands;
pub mod error;
pub mod ingest;
pub mod output;

pub use commands::{cmd_cda, cmd_ce, cmd_ci, cmd_sim};
pub use error::CliError;
pub use ingest::{ingest, IngestedTable};
pub use output::{CommandOutput, OutputFormat};
