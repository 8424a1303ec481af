//! Exact rational evaluation of Donaldson and Seiberg-Witten invariant
//! formulas on lattice-level models of standard four-manifolds.

pub mod cli;
pub mod diffops;
pub mod error;
pub mod invariants;
mod linalg;
pub mod lattice;
pub mod manifold;
pub mod parity;
pub mod polyalg;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Class, HClass, Lattice};
pub use manifold::{FourManifold, SwTable};
pub use parity::Parity;
pub use rational::Rational;
