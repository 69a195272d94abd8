//! Truncated Fock-space simulation of entangled squeezed vacua.
//!
//! Builds the states (`states`), tests them with moment-matrix criteria
//! (`separability`), quantifies their entanglement (`measures`), degrades
//! them with noise (`channels`), probes them with Jaynes-Cummings qubits
//! (`dynamics`) and runs the swapping, teleportation and generation
//! circuits (`protocols`).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod measures;
pub mod protocols;
pub mod separability;
pub mod states;

pub use error::{Error, Result};
pub use fock::{DensityMatrix, FockVector, ModeLayout, TailPolicy};
pub use num_complex::Complex64 as C64;
