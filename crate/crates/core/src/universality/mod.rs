//! Shifts `L(s + iγ)` by `a`-point ordinates against targets on a disc.

mod search;

pub use search::{euler_distance_ms, periodic_search, shift_search, HitReport, PeriodicHitReport, PrimePhases};

use crate::periodic::{PeriodicFunction, R2Factor};
use crate::specfun::bernoulli::bernoulli_weight;
use crate::specfun::real_pow;
use crate::{error::domain, Result, C64};
use serde::Serialize;

pub const DEFAULT_RESOLUTION: usize = 9;

/// Nodes of a `resolution × resolution` lattice on the bounding box of a
/// disc, keeping those inside the disc.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexGrid {
    pub center: C64,
    pub radius: f64,
    pub resolution: usize,
    nodes: Vec<C64>,
}

impl ComplexGrid {
    /// A disc inside the open strip `1/2 < σ < 1`.
    pub fn disc(center: C64, radius: f64, resolution: usize) -> Result<Self> {
        let g = Self::disc_anywhere(center, radius, resolution)?;
        if let Some(z) = g.nodes.iter().find(|z| !(z.re > 0.5 && z.re < 1.0)) {
            return Err(domain(format!("grid node {z} lies outside 1/2 < σ < 1")));
        }
        Ok(g)
    }

    /// Same lattice without the strip restriction (for calibration runs).
    pub fn disc_anywhere(center: C64, radius: f64, resolution: usize) -> Result<Self> {
        if !(radius >= 0.0) || resolution == 0 {
            return Err(domain("grid needs radius >= 0 and resolution >= 1"));
        }
        let nodes = if resolution == 1 || radius == 0.0 {
            vec![center]
        } else {
            let step = 2.0 * radius / (resolution - 1) as f64;
            let mut nodes = Vec::new();
            for j in 0..resolution {
                for i in 0..resolution {
                    let z = center + C64::new(-radius + i as f64 * step, -radius + j as f64 * step);
                    if (z - center).norm() <= radius * (1.0 + 1e-12) {
                        nodes.push(z);
                    }
                }
            }
            nodes
        };
        Ok(ComplexGrid { center, radius, resolution, nodes })
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    /// Rejects grids that come within `1e−3` of a zero of `P`.
    pub fn guard_r2(&self, p: &R2Factor) -> Result<()> {
        match self.nodes.iter().find(|&&z| p.distance_to_zeros(z) < 1e-3) {
            Some(z) => Err(domain(format!("grid node {z} is within 1e-3 of a zero of P"))),
            None => Ok(()),
        }
    }
}

const EM_TERMS: usize = 15;

/// Evaluates `L(node + iτ; f)` on every node at once: the Dirichlet
/// polynomial up to `Mq` is expanded in a Taylor series about the grid
/// centre; the Euler–Maclaurin tail is computed per node.
pub struct GridEvaluator<'a> {
    f: &'a PeriodicFunction,
    grid: &'a ComplexGrid,
}

impl<'a> GridEvaluator<'a> {
    pub fn new(f: &'a PeriodicFunction, grid: &'a ComplexGrid) -> Self {
        GridEvaluator { f, grid }
    }

    pub fn eval(&self, tau: f64) -> Result<Vec<C64>> {
        let q = self.f.q();
        let qf = q as f64;
        let grid = self.grid;
        let nodes = grid.nodes();
        let offsets: Vec<C64> = nodes.iter().map(|z| z - grid.center).collect();
        let h_max = offsets.iter().map(|h| h.norm()).fold(0.0, f64::max);
        let sigma_min = nodes.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        if !(sigma_min > 0.0) {
            return Err(domain("grid evaluation needs Re s > 0 on every node"));
        }
        let height = (grid.center.im + tau).abs() + grid.radius;
        let m = ((height + 1.0).ceil() as usize).max(10);
        let n_max = m * q;
        let ln_n = (n_max as f64).ln();
        let mass: f64 = self.f.values().iter().map(|z| z.norm()).sum::<f64>() * m as f64;
        let mut order = 0;
        let mut bound = mass * (h_max * ln_n);
        while bound > 1e-15 && order < 80 {
            order += 1;
            bound *= h_max * ln_n / (order + 1) as f64;
        }
        let c = grid.center + C64::new(0.0, tau);
        let mut moments = vec![C64::new(0.0, 0.0); order + 1];
        for n in (1..=n_max).rev() {
            let fn_ = self.f.at(n as i64);
            if fn_ == C64::new(0.0, 0.0) {
                continue;
            }
            let l = -(n as f64).ln();
            let mut term = fn_ * real_pow(n as f64, c);
            for (k, slot) in moments.iter_mut().enumerate() {
                *slot += term;
                term *= l / (k + 1) as f64;
            }
        }
        let q_pow = |s: C64| real_pow(qf, s);
        Ok(offsets
            .iter()
            .zip(nodes)
            .map(|(&h, &z)| {
                let head = moments.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * h + a);
                let s = z + C64::new(0.0, tau);
                let tail: C64 = (1..=q)
                    .map(|a| {
                        let fa = self.f.at(a as i64);
                        if fa == C64::new(0.0, 0.0) {
                            return C64::new(0.0, 0.0);
                        }
                        fa * em_tail(s, m as f64 + a as f64 / qf)
                    })
                    .sum();
                head + tail * q_pow(s)
            })
            .collect())
    }
}

/// `x^{1−s}/(s−1) + x^{−s}/2 + Σ_{k≤15} B_{2k}/(2k)! (s)_{2k−1} x^{−s−2k+1}`.
fn em_tail(s: C64, x: f64) -> C64 {
    let xs = real_pow(x, s);
    let mut sum = xs * x / (s - 1.0) + 0.5 * xs;
    let mut poch = s;
    let mut pow = xs / x;
    for k in 1..=EM_TERMS {
        sum += bernoulli_weight(k) * poch * pow;
        let two_k = 2.0 * k as f64;
        poch *= (s + two_k - 1.0) * (s + two_k);
        pow /= x * x;
    }
    sum
}

/// `max_node |L(node + iτ; f) − target(node)|`.
pub fn sup_distance(tau: f64, f: &PeriodicFunction, target: &[C64], grid: &ComplexGrid) -> Result<f64> {
    if target.len() != grid.nodes().len() {
        return Err(domain("target must have one value per grid node"));
    }
    let values = GridEvaluator::new(f, grid).eval(tau)?;
    Ok(values.iter().zip(target).map(|(v, t)| (v - t).norm()).fold(0.0, f64::max))
}
