//! Multi-objective optimization with evolutionary and swarm metaheuristics, benchmark
//! problems, quality indicators and statistical reporting.

pub mod algorithms;
pub mod cli;
pub mod core;
pub mod error;
pub mod lab;
pub mod evaluators;
pub mod indicators;
pub mod operators;
pub mod problems;
pub mod stats;

pub use error::{Error, Result};
