//! Analysis of binary coherent systems.
//!
//! The library models a system of `n` binary components through its monotone
//! structure function and provides:
//!
//! * structure-function algebra: pivotal decomposition, duality, minimal
//!   path/cut families, the unique multilinear simple form ([`structure`]);
//! * the reliability polynomial `h(p)` and Birnbaum reliability importance
//!   for fixed component reliabilities ([`reliability`]);
//! * lifetime-based importance: system survival/density and the
//!   Barlow-Proschan instant, interval and total measures ([`lifetime`]);
//! * structural importance without reliabilities, including the Banzhaf and
//!   Shapley-Shubik power indices ([`structural`]);
//! * module (sub-system) decomposition with both module-importance notions
//!   ([`decomposition`]);
//! * voting-game importance: an equilibrium of a finite-horizon multilateral
//!   Markov stopping game whose stop rule is aggregated by a structure
//!   function ([`voting`]);
//! * JSON file formats and report emission backing the `relimp` CLI ([`io`]).
//!
//! Numeric entry points are generic over the scalar type via
//! [`num_traits::Float`]; `f64` aliases for the scalar-parameterized types
//! live at the crate root. Power-index weights are accumulated in exact
//! integer arithmetic before the final division.

pub mod decomposition;
pub mod error;
pub mod io;
pub mod lifetime;
pub mod reliability;
pub mod structural;
pub mod structure;
pub mod voting;

pub(crate) mod quadrature;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use structure::{
    ComponentId, SetFamily, SimpleForm, StateVector, StructureFormula, StructureFunction,
    DEFAULT_ENUM_CAP,
};

/// Default scalar type for reliability and game computations.
pub type Real = f64;

/// [`lifetime::LifetimeModel`] over the default scalar.
pub type LifetimeModel = lifetime::LifetimeModel<Real>;
/// [`voting::StoppingGame`] over the default scalar.
pub type StoppingGame = voting::StoppingGame<Real>;
/// [`voting::EquilibriumSolution`] over the default scalar.
pub type EquilibriumSolution = voting::EquilibriumSolution<Real>;
/// [`reliability::ImportanceReport`] over the default scalar.
pub type ImportanceReport = reliability::ImportanceReport<Real>;
