//! Evolutionary dynamics toolkit: event takeover values (ETV), adaptive
//! operator selection and self-organizing population topologies.
//!
//! The crate is organised bottom-up:
//!
//! - [`genome`] gene specifications, random genomes and distances
//! - [`objectives`] the benchmark suite (artificial and engineering problems)
//! - [`operators`] the ten search operators
//! - [`selection`] stochastic ranking, selection schemes and population update
//! - [`etv`] event genealogy tracking and the ETV archive
//! - [`adaptation`] credit assignment and probability controllers
//! - [`topology`] population networks, metrics, SOTEA rules and baseline models
//! - [`engine`] run loops, batch execution and telemetry
//! - [`analysis`] distributions, power-law fits and result summaries
//! - [`cli`] command line front end used by the `evonet` binary

pub mod adaptation;
pub mod analysis;
pub mod cli;
pub mod engine;
pub mod error;
pub mod etv;
pub mod genome;
pub mod objectives;
pub mod operators;
pub mod rng;
pub mod selection;
pub mod topology;

pub use error::{Error, Result};
