//! Communication-aware processor allocation on mesh machines.
//!
//! Given the free processors of a `d`-dimensional mesh and a request for `k`
//! of them, pick `k` processors with small total pairwise hop (L1) distance.
//! The crate provides the allocation heuristics used on real machines (MM,
//! MM+Inc, MC1x1, HilbertBF), exact solvers used as oracles, an
//! approximation scheme with a certified factor, adversarial instance
//! generators, and a trace-driven job simulator.

pub mod allocators;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod optimal;
pub mod ptas;
pub mod simulator;

pub use allocators::{Algorithm, Mesh};
pub use error::{Error, Result};
pub use geometry::{Allocation, Point, PointMultiset};
