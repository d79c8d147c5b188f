//! Exact valuative-stability invariants of polarised toric varieties.
//!
//! A polarised toric variety is described by a complete simplicial [`Fan`]
//! and an ample [`ToricDivisor`]; everything is computed from its moment
//! polytope in exact rational arithmetic.

pub mod cli;
pub mod error;
pub mod exact;
pub mod fan;
pub mod gallery;
pub mod invariants;
pub mod oracle;
pub mod polytope;

pub use error::{Error, Result};
pub use exact::{LatticeVector, Polynomial, Rational};
pub use fan::{Fan, ValuationData};
pub use invariants::Polarised;
pub use polytope::{LatticePolytope, PiecewisePolynomial, ToricDivisor};
