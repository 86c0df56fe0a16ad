//! Delta-matroids represented as set systems over `[n]`.
//!
//! A set system on `[n]` is stored as a feasibility bitvector of length `2^n`:
//! bit `m` is set iff the subset with indicator mask `m` is feasible, where
//! element `i` corresponds to bit `i - 1` of the mask. Every module in this
//! crate shares that convention.
//!
//! * [`setsystem`] holds the representation, the symmetric exchange check,
//!   twists, set-system minors and matroid primitives.
//! * [`enumerate`] builds the complete list of labelled delta-matroids level
//!   by level and persists each level to disk.
//! * [`construct`] realizes the hypercube and Johnson-graph constructions
//!   that give lower bounds on the number of (even) delta-matroids.
//! * [`encode`] implements the container encoding of even delta-matroids:
//!   the distance-two hypercube graph, its spectrum, the max-degree peeling
//!   procedure and rank-two local covers.

pub mod construct;
pub mod encode;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod packed;
pub mod setsystem;

pub use error::{DmError, Result};
pub use setsystem::{Exchange, ExchangeWitness, Mask, Matroid, MinorKind, SetSystem, MAX_N};
