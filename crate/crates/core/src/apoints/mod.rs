//! Solutions of `Δ(s) = a`: seeding from the phase, Newton refinement,
//! argument-principle certification and a JSONL cache.

mod cache;
mod contour;
mod enumerate;
mod newton;
mod seed;

pub use cache::{cache_load, cache_store, CacheHeader};
pub use contour::{count_argument_principle, partial_fraction_residual};
pub use enumerate::{calibrate, enumerate, Enumeration};
pub use newton::{refine, Refined};
pub use seed::seed_ordinates;

use crate::delta::DeltaParams;
use crate::{error::domain, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

/// One `a`-point `δ_a = β + iγ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct APoint {
    /// 1-based position among all `a`-points above `t_a`.
    pub n: usize,
    pub beta: f64,
    pub gamma: f64,
    pub residual: f64,
}

impl APoint {
    pub fn s(&self) -> C64 {
        C64::new(self.beta, self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct APointConfig {
    pub t_a: f64,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub dedupe_radius: f64,
}

impl APointConfig {
    pub fn with_cutoff(t_a: f64) -> Self {
        APointConfig { t_a, newton_tol: 1e-12, max_iter: 50, dedupe_radius: 1e-6 }
    }
}

/// Closed rectangle `[σ_lo, σ_hi] × [t_lo, t_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rect {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rect {
    pub fn strip(t_lo: f64, t_hi: f64) -> Self {
        Rect { sigma_lo: 0.0, sigma_hi: 1.0, t_lo, t_hi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountCertificate {
    pub rect: Rect,
    pub count: i64,
    /// Distance of `(1/2πi)∮ Δ'/(Δ−a)` from the nearest integer.
    pub quadrature_residual: f64,
}

/// `a`-points known to be complete on `(lower, upper]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSet {
    pub params: DeltaParams,
    pub a: C64,
    pub t_a: f64,
    pub lower: f64,
    pub upper: f64,
    pub points: Vec<APoint>,
}

impl PointSet {
    /// Checks that `(lo, hi]` lies inside the certified range.
    pub fn require_covers(&self, lo: f64, hi: f64) -> Result<()> {
        if lo < self.lower || hi > self.upper {
            return Err(domain(format!(
                "window ({lo}, {hi}] is not inside the certified range ({}, {}]",
                self.lower, self.upper
            )));
        }
        Ok(())
    }

    /// Points with `lo < γ ≤ hi`.
    pub fn window(&self, lo: f64, hi: f64) -> &[APoint] {
        let start = self.points.partition_point(|p| p.gamma <= lo);
        let end = self.points.partition_point(|p| p.gamma <= hi);
        &self.points[start..end]
    }

    pub fn ordinates(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.gamma).collect()
    }
}

/// Mean gap `2π / log(qt/2π)` between consecutive `a`-points at height `t`.
pub(crate) fn spacing(t: f64, p: &DeltaParams) -> f64 {
    2.0 * PI / (p.q() as f64 * t / (2.0 * PI)).ln()
}
