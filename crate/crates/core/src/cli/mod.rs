//! Command-line front end: run configuration, polar pipeline, and the CSV,
//! SVG, and plain-text report emitters.

pub mod config;

pub use config::RunConfig;
