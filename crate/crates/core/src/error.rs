use crate::C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("function has no parity (neither even nor odd)")]
    NoParity,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("value at residue {residue} is nonzero but gcd({residue}, {modulus}) > 1")]
    SupportViolation { residue: usize, modulus: usize },
    #[error("degenerate two-periodic function: psi(1) = psi(2)")]
    Degenerate,
    #[error("pole at s = {0}")]
    Pole(C64),
    #[error("zero of the factor at s = {0}")]
    Zero(C64),
    #[error("{0}")]
    Domain(String),
    #[error("Euler-Maclaurin continuation needs more than 30 corrections at Re s = {0}")]
    ContinuationRange(f64),
    #[error("Newton did not converge from {start} (residual {residual:e})")]
    NoConvergence { start: C64, residual: f64 },
    #[error("Newton iterate left the strip at {0}")]
    EscapedStrip(C64),
    #[error("contour integral is {residual:.3} away from an integer")]
    Quadrature { residual: f64 },
    #[error("window ({lo}, {hi}]: found {found} points, contour count {counted}")]
    Incomplete {
        lo: f64,
        hi: f64,
        found: usize,
        counted: i64,
    },
    #[error("cache line {line}: {msg}")]
    Cache { line: usize, msg: String },
    #[error("cache header mismatch: {0}")]
    CacheMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
