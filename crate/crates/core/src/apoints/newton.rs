use super::APointConfig;
use crate::delta::{log_delta_with_deriv, DeltaParams};
use crate::{error::domain, Error, Result, C64};
use serde::Serialize;

/// Residuals below this are accepted even if Newton stalls (floating floor).
pub(crate) const ACCEPT_RESIDUAL: f64 = 1e-9;
const STRIP_HALF_WIDTH: f64 = 0.45;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Refined {
    pub s: C64,
    pub residual: f64,
    pub iterations: usize,
    /// `|Δ'(s)| < 1e−8`: possibly a multiple root.
    pub suspected_multiple: bool,
}

fn escaped(s: C64) -> bool {
    (s.re - 0.5).abs() > STRIP_HALF_WIDTH
}

/// Damped Newton iteration for `Δ(s) = a` starting at `s0`.
pub fn refine(s0: C64, a: C64, p: &DeltaParams, cfg: &APointConfig) -> Result<Refined> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    if s0.im < cfg.t_a {
        return Err(domain(format!("start height {} is below t_a = {}", s0.im, cfg.t_a)));
    }
    if escaped(s0) {
        return Err(Error::EscapedStrip(s0));
    }
    let tol = cfg.newton_tol * (1.0 + a.norm());
    let eval = |s: C64| -> Result<(C64, C64)> {
        let (log_d, ld) = log_delta_with_deriv(s, p)?;
        Ok((log_d.exp(), ld))
    };
    let mut s = s0;
    let (mut d, mut ld) = eval(s)?;
    let mut r = (d - a).norm();
    let mut iterations = 0;
    let done = |s: C64, r: f64, d: C64, ld: C64, iterations| {
        Ok(Refined { s, residual: r, iterations, suspected_multiple: (d * ld).norm() < 1e-8 })
    };
    while r > tol {
        if iterations == cfg.max_iter {
            return if r <= ACCEPT_RESIDUAL {
                done(s, r, d, ld, iterations)
            } else {
                Err(Error::NoConvergence { start: s0, residual: r })
            };
        }
        let step = (d - a) / (d * ld);
        if !step.is_finite() {
            return Err(Error::NoConvergence { start: s0, residual: r });
        }
        let mut lambda = 1.0;
        let mut accepted = None;
        let mut left_strip = false;
        for _ in 0..12 {
            let trial = s - lambda * step;
            if escaped(trial) {
                left_strip = true;
            } else {
                let (td, tld) = eval(trial)?;
                let tr = (td - a).norm();
                if tr < r {
                    accepted = Some((trial, td, tld, tr));
                    break;
                }
            }
            lambda *= 0.5;
        }
        iterations += 1;
        match accepted {
            Some((ns, nd, nld, nr)) => {
                (s, d, ld, r) = (ns, nd, nld, nr);
            }
            None if r <= ACCEPT_RESIDUAL => return done(s, r, d, ld, iterations),
            None if left_strip => return Err(Error::EscapedStrip(s - step)),
            None => return Err(Error::NoConvergence { start: s0, residual: r }),
        }
    }
    done(s, r, d, ld, iterations)
}
