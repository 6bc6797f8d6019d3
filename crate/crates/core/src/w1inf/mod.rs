//! `W(1+∞)` at central charge `-n`: the generators `J^l` and `Ω_{a,b}`,
//! the free-field projection, the determinantal ideal elements `D_{I,J}`,
//! singular vectors, remainders and decoupling relations, and the `L`, `W`
//! fields commuting with the Heisenberg current.

mod context;
mod decouple;
mod lw;
mod model;
mod nopoly;
mod parabolic;
mod singular;

pub use context::{DijElement, W1Inf};
pub use decouple::{a_m_coordinates, decoupling, eliminate, raise, remainder, Decoupling, Relation, Remainder};
pub use lw::{build_l, build_lw, build_w, w_w_closure, Check, LwReport};
pub use model::{omega_in_j_basis, AmSpace, Model, Realization};
pub use nopoly::{NoPoly, OmegaFactor, Ordering};
pub use parabolic::{check_grid, lambda, mu, parabolic_act, without_vacuum, ParabolicMismatch};
pub use singular::{find_singular, is_singular, Annihilators};
