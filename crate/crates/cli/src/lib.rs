//! Command-line front end: configuration, evaluation commands, verification
//! suites and deterministic report output.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;
