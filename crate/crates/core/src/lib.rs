//! Exact computations with generalized Jordan triple systems of second order.
//!
//! A triple system is stored as a sparse table of structure constants over
//! the number field Q(√2, √3). On top of that the crate provides
//!
//! * verification of the two defining identities and of weak commutativity
//!   ([`identities`]),
//! * the operators `L`, `R`, `Q` attached to a tripotent and the ten-part
//!   Peirce decomposition they induce ([`peirce`]),
//! * the circle-algebra description of a system whose tripotent is a left
//!   unit, including reconstruction of the triple product and synthesis of
//!   new systems from a circle table ([`left_unit`]),
//! * constructors for the standard matrix models ([`models`]).

pub mod error;
pub mod identities;
pub mod json;
pub mod left_unit;
pub mod linalg;
pub mod models;
pub mod peirce;
pub mod scalar;
pub mod triple;

pub use error::{Error, Result};
pub use identities::{CheckMode, IdentityId, IdentityReport};
pub use left_unit::{Block, CircleAlgebra, GradedSpace};
pub use linalg::{Matrix, Subspace, Vector};
pub use peirce::{ComponentLabel, PeirceDecomposition, TripotentContext};
pub use scalar::{Rational, Scalar};
pub use triple::TripleSystem;
