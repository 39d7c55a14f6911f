//! The `rootcite` command-line workflow: `create` a project, `ingest` exports into its
//! record store, then `run` deduplication, spectroscopy and peak reporting.

pub mod commands;
pub mod error;
pub mod layout;
pub mod output;
pub mod store;
pub mod svg;

pub use commands::{cmd_create, cmd_ingest, cmd_run, IngestSummary, RunOptions, RunReport};
pub use error::CliError;
pub use layout::ProjectLayout;
