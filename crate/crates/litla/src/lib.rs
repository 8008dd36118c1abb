//! Record input, report exports, run configuration and the stage pipeline
//! behind the `litla` command line. The analyses themselves live in
//! [`litla_core`].

pub mod config;
pub mod export;
pub mod pipeline;
pub mod records;
pub mod synth;

pub use litla_core as core;
