use crate::delta::{delta, DeltaParams};
use crate::periodic::DirichletCharacter;
use crate::specfun::real_pow;
use crate::{error::domain, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

/// Default lower height for the approximate functional equation.
pub const DEFAULT_TAU0: f64 = 10.0;

/// Lengths `X`, `y` of the two sums, tied by `2πXy = q τ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AfeParams {
    pub x: f64,
    pub y: f64,
    pub modulus: usize,
    pub tau: f64,
}

impl AfeParams {
    pub fn new(x: f64, y: f64, modulus: usize, tau: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0) || modulus == 0 {
            return Err(domain("X, y and the modulus must be positive"));
        }
        let target = modulus as f64 * tau;
        if (2.0 * PI * x * y - target).abs() > 1e-9 * target.abs() {
            return Err(domain(format!("2πXy = {} but qτ = {target}", 2.0 * PI * x * y)));
        }
        Ok(AfeParams { x, y, modulus, tau })
    }

    /// `X = y = (qτ/2π)^{1/2}`.
    pub fn balanced(modulus: usize, tau: f64) -> Result<Self> {
        let x = (modulus as f64 * tau / (2.0 * PI)).sqrt();
        Self::new(x, x, modulus, tau)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AfeValue {
    pub value: C64,
    pub error_estimate: f64,
}

/// `Σ_{n≤X} χ(n) n^{−s} + Δ(s; χ) Σ_{n≤y} χ⁺(n) n^{s−1}`, where `χ⁺` is the
/// dual sequence of the functional equation.
pub fn eval_l_afe(s: C64, chi: &DirichletCharacter, params: &AfeParams) -> Result<AfeValue> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(domain(format!("AFE needs 0 < Re s < 1, got {}", s.re)));
    }
    if s.im < DEFAULT_TAU0 {
        return Err(domain(format!("AFE needs Im s >= {DEFAULT_TAU0}, got {}", s.im)));
    }
    if params.modulus != chi.modulus() || (params.tau - s.im).abs() > 1e-9 * s.im {
        return Err(domain("AFE parameters do not match the character and height"));
    }
    let f = chi.to_periodic();
    let p = DeltaParams::from_function(&f)?;
    let dual = f.dft(1);
    let first: C64 = (1..=params.x.floor() as i64)
        .map(|n| f.at(n) * real_pow(n as f64, s))
        .sum();
    let second: C64 = (1..=params.y.floor() as i64)
        .map(|n| dual.at(n) * real_pow(n as f64, 1.0 - s))
        .sum();
    let value = first + delta(s, &p)? * second;
    let sigma = s.re;
    let error_estimate = params.x.powf(-sigma) * (params.y + 2.0).ln()
        + s.im.powf(0.5 - sigma) * params.y.powf(sigma - 1.0);
    Ok(AfeValue { value, error_estimate })
}
