//! Exact computations in the vertex algebra W(1+∞) at central charge -n,
//! through its Heisenberg/βγ free-field realization.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`diffop`] hold exact rationals and the Lie algebra of
//!   differential operators on the punctured line.
//! * [`linalg`] is a fraction-free sparse nullspace/solve kernel.
//! * [`fock`] is a PBW normal-ordering engine for free-field and current
//!   systems, with Wick products, derivatives and circle products.
//! * [`w1inf`] builds the generators, the classical invariant-theory
//!   relations and their quantum corrections, and the decoupling relations.
//! * [`invariant`] is the classical invariant ring of the symplectic group.
//! * [`zhu`] implements Zhu's algebra on top of the engine.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod diffop;
pub mod error;
pub mod fock;
pub mod invariant;
pub mod linalg;
pub mod par;
pub mod scalar;
pub mod w1inf;
pub mod zhu;

pub use error::{Error, Result};
pub use scalar::Scalar;
