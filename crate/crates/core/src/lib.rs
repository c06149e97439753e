//! Exact classification of invariant characteristic tensors (curvature,
//! torsion, inner torsion) for matrix structure groups.
//!
//! Everything is linear algebra over ℚ: a group is a Lie algebra basis plus
//! component representatives, a tensor space is a flat coordinate space with
//! symmetry constraints, and an invariant space is a canonical kernel.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod echelon;
mod sparse;

pub mod classify;
pub mod equivariance;
pub mod error;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod named;
pub mod parallelism;
pub mod rational;
pub mod subspace;
pub mod tensor;

pub use error::{Error, Result};
pub use group::{Builtin, GroupSpec};
pub use matrix::RatMatrix;
pub use rational::Rational;
pub use subspace::Subspace;
pub use tensor::{TensorElement, TensorSpec, Valence};
