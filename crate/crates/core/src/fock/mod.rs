//! Truncated Fock-space algebra: layouts, states, gates, reductions and
//! spectral helpers.

pub mod gates;
mod layout;
mod local;
mod moment;
mod ops;
mod product;
pub mod spectral;
mod state;

pub use layout::ModeLayout;
pub use local::LocalOp;
pub use moment::{Ladder, Moments, OpWord};
pub use ops::{fidelity, partial_trace, partial_transpose, Tensor};
pub use product::ProductSum;
pub use state::{tail_levels, DensityMatrix, FockVector, QuantumState, TailPolicy, TAIL_THRESHOLD};
