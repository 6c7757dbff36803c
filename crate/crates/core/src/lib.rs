//! Dirichlet series with periodic coefficients, the factor `Δ(s)` of their
//! functional equation, and the `a`-points of `Δ`.
//!
//! The crate is organised bottom-up: [`periodic`] holds the coefficient
//! sequences, [`specfun`] the special functions, [`lfunction`] and [`delta`]
//! the analytic objects, [`apoints`] the root enumeration and [`stats`] /
//! [`universality`] the experiments built on top of enumerated points.

// `!(x > y)` rejects NaN along with the failing values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Published constants are kept at the precision they were printed with.
#![allow(clippy::excessive_precision)]

pub mod apoints;
pub mod arith;
pub mod cplx;
pub mod delta;
mod error;
pub mod lfunction;
pub mod periodic;
pub mod quadrature;
pub mod specfun;
pub mod stats;
pub mod universality;

pub use error::{Error, Result};

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
