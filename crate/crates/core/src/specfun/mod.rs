//! Special functions: Bernoulli numbers, `log Γ`, digamma, Hurwitz zeta.

pub mod bernoulli;
mod gamma;
mod hurwitz;

pub use gamma::{digamma, gamma, log_gamma};
pub(crate) use hurwitz::weighted_hurwitz;
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_with_error, real_pow, EulerMaclaurinConfig};

#[cfg(test)]
pub(crate) use gamma::tests::stirling_log_gamma;
