//! Monopole-dimer model on Cartesian products of plane graphs.
//!
//! The crate computes signed partition functions three ways: as the exact
//! determinant of a generalised adjacency matrix, by brute-force enumeration
//! of loop-vertex configurations, and from closed-form product formulas for
//! grid graphs. It also evaluates free energies and monopole/edge densities
//! of the infinite-volume limit.
//!
//! Vertices are 0-based in the Rust API and 1-based in JSON files and on the
//! command line.

pub mod asymptotics;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod graph;
pub mod model;
pub mod poly;
pub mod product;

pub use error::{Error, Result};
