//! Data loading, reports and the command-line front end for `nilvar-core`.

pub mod checks;
pub mod cli;
pub mod data;
pub mod report;
