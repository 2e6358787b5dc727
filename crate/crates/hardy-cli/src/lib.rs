//! Command-line front end for the `hardy` workbench: text syntax for
//! symbols, run configuration, the acceptance suite and its oracles.

pub mod commands;
pub mod config;
pub mod instances;
pub mod oracles;
pub mod parse;
pub mod suite;
