use super::PeriodicFunction;
use crate::{error::domain, Error, Result, C64};
use std::f64::consts::{LN_2, PI};

/// `P(s) = ψ(1) + (ψ(2) − ψ(1)) 2^{−s}`, so that `L(s; ψ) = P(s) ζ(s)` for a
/// 2-periodic `ψ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct R2Factor {
    pub psi1: C64,
    pub psi2: C64,
    /// One zero of `P`; all zeros are `base + 2πik/log 2`. `None` when
    /// `ψ(1) = 0` and `P` is zero-free.
    pub zero_base: Option<C64>,
}

/// Vertical spacing `2π/log 2` of the zeros of `P`.
pub const ZERO_PERIOD: f64 = 2.0 * PI / LN_2;

pub fn r2_factor(psi: &PeriodicFunction) -> Result<R2Factor> {
    if psi.q() != 2 {
        return Err(domain(format!("expected period 2, got {}", psi.q())));
    }
    let (psi1, psi2) = (psi.at(1), psi.at(2));
    if psi1 == psi2 {
        return Err(Error::Degenerate);
    }
    // 2^s = 1 − ψ(2)/ψ(1)
    let zero_base = (psi1 != C64::new(0.0, 0.0)).then(|| (C64::new(1.0, 0.0) - psi2 / psi1).ln() / LN_2);
    Ok(R2Factor { psi1, psi2, zero_base })
}

impl R2Factor {
    pub fn eval(&self, s: C64) -> C64 {
        self.psi1 + (self.psi2 - self.psi1) * (-s * LN_2).exp()
    }

    /// Real part shared by every zero.
    pub fn zero_real_part(&self) -> Option<f64> {
        self.zero_base.map(|b| b.re)
    }

    /// Euclidean distance from `s` to the nearest zero of `P`.
    pub fn distance_to_zeros(&self, s: C64) -> f64 {
        match self.zero_base {
            None => f64::INFINITY,
            Some(b) => {
                let dt = s.im - b.im;
                let dt = dt - ZERO_PERIOD * (dt / ZERO_PERIOD).round();
                (s.re - b.re).hypot(dt)
            }
        }
    }

    /// Zeros with imaginary part in `[lo, hi]`.
    pub fn zeros_between(&self, lo: f64, hi: f64) -> Vec<C64> {
        let Some(b) = self.zero_base else { return Vec::new() };
        let k0 = ((lo - b.im) / ZERO_PERIOD).ceil() as i64;
        let k1 = ((hi - b.im) / ZERO_PERIOD).floor() as i64;
        (k0..=k1).map(|k| b + C64::new(0.0, k as f64 * ZERO_PERIOD)).collect()
    }
}
