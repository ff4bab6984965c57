//! Spinor and twistor calculus for null foliations of complex conformal spheres.
//!
//! Every algebraic identity is evaluated exactly over the field ℚ(i, √2)
//! ([`scalar::ExactScalar`]); a complex floating-point backend
//! ([`scalar::CFloat`]) covers the few places that need irrational eigenvalues.

pub mod charts;
pub mod clifford;
pub mod error;
pub mod foliation;
pub mod incidence;
pub mod purespinor;
pub mod scalar;
pub mod tractor;

pub use error::{Error, Result};
