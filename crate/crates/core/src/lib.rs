//! Schubert, Grothendieck and quantum Grothendieck polynomials with exact arithmetic.

pub mod chains;
pub mod classical;
pub mod doublepoly;
pub mod error;
pub mod exactpoly;
pub mod expand;
mod memo;
pub mod permgroup;
pub mod quantumbasis;

pub use classical::{Basis, Expansion};
pub use error::{Error, Result};
pub use exactpoly::{Family, Monomial, Polynomial, Var};
pub use permgroup::{Direction, Permutation, QuantumEdge};
