//! CSV ingestion, reports, synthetic data and the `aod` command line on top
//! of [`aod_core`].

pub mod candidate;
pub mod cli;
pub mod csv_io;
pub mod experiments;
pub mod report;
pub mod synth;
