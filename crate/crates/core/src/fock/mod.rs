//! PBW normal-ordering engine for the vacuum modules of the current algebra
//! and of βγ / bc free-field systems.
//!
//! Modes follow `a(z) = Σ a(m) z^{-m-1}`: `a(m)` lowers weight by
//! `m + 1 - wt(a)` and `a(-1)|0⟩` is the state of `a`. States are stored as
//! combinations of words of creation modes in canonical order.

mod basis;
mod engine;
mod expr;
pub mod identities;
mod system;
mod word;

pub use basis::{creation_modes, weight_basis, weight_words};
pub use engine::Engine;
pub use expr::{FieldExpr, Node};
pub use system::System;
pub use word::{add_scaled, add_term, mode_name, word_degree, word_weight, FockState, Mode, Terms, Word};
