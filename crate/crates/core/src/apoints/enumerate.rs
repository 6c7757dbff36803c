use super::contour::count_argument_principle;
use super::newton::refine;
use super::seed::{phase_cells, principal_arg};
use super::{spacing, APoint, APointConfig, CountCertificate, PointSet, Rect};
use crate::delta::{predicted_beta, DeltaParams};
use crate::{error::domain, Error, Result, C64};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{E, PI};

const MAX_ROUNDS: usize = 4;
const MAX_SPLIT_DEPTH: usize = 16;

/// A certified window of `a`-points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Enumeration {
    pub set: PointSet,
    pub certificate: CountCertificate,
    pub repair_rounds: usize,
    /// Indices `n` of roots where `|Δ'|` nearly vanishes.
    pub suspected_multiple: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    s: C64,
    residual: f64,
    multiple: bool,
}

struct Search<'a> {
    p: &'a DeltaParams,
    a: C64,
    cfg: &'a APointConfig,
}

impl Search<'_> {
    fn margin(&self, t: f64) -> f64 {
        0.1 * spacing(t, self.p)
    }

    fn start(&self, t: f64, beta: Option<f64>) -> C64 {
        let b = beta.unwrap_or_else(|| {
            predicted_beta(t, self.a, self.p).map_or(0.5, |b| b.clamp(0.1, 0.9))
        });
        C64::new(b, t.max(self.cfg.t_a))
    }

    fn solve(&self, starts: &[C64]) -> Vec<Candidate> {
        let t_a = self.cfg.t_a;
        starts
            .par_iter()
            .map(|&s0| refine(s0, self.a, self.p, self.cfg).ok())
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .filter(|r| r.s.re > 0.0 && r.s.re < 1.0 && r.s.im >= t_a)
            .map(|r| Candidate { s: r.s, residual: r.residual, multiple: r.suspected_multiple })
            .collect()
    }

    fn seeds(&self, lo: f64, hi: f64) -> Result<Vec<C64>> {
        let cells = phase_cells(self.p, principal_arg(self.a), lo, hi)?;
        Ok(cells.into_iter().map(|(_, t)| self.start(t, None)).collect())
    }

    fn merge(&self, pts: &mut Vec<Candidate>, more: Vec<Candidate>) {
        pts.extend(more);
        pts.sort_by(|x, y| x.s.im.total_cmp(&y.s.im).then(x.s.re.total_cmp(&y.s.re)));
        let radius = self.cfg.dedupe_radius;
        let mut out: Vec<Candidate> = Vec::with_capacity(pts.len());
        for c in pts.drain(..) {
            // near-duplicates are adjacent in γ unless β differs by more than the radius
            let dup = out
                .iter()
                .rev()
                .take_while(|o| c.s.im - o.s.im < radius)
                .any(|o| (o.s - c.s).norm() < radius);
            if !dup {
                out.push(c);
            }
        }
        *pts = out;
    }

    fn in_window(pts: &[Candidate], lo: f64, hi: f64) -> usize {
        pts.iter().filter(|c| c.s.im > lo && c.s.im <= hi).count()
    }

    /// A horizontal edge near `t` that keeps clear of known points without
    /// changing which of them lie below it.
    fn edge(&self, t: f64, pts: &[Candidate]) -> f64 {
        let margin = self.margin(t);
        let idx = pts.partition_point(|c| c.s.im <= t);
        let below = idx.checked_sub(1).map(|i| pts[i].s.im);
        let above = pts.get(idx).map(|c| c.s.im);
        let clear_below = below.is_none_or(|b| t - b >= margin);
        let clear_above = above.is_none_or(|b| b - t >= margin);
        match (below, above) {
            _ if clear_below && clear_above => t,
            (Some(b), Some(u)) => 0.5 * (b + u),
            (None, Some(_)) => t - margin,
            (Some(_), None) => t + margin,
            (None, None) => t,
        }
    }

    /// Contour count with small edge shifts if an edge grazes a root.
    fn count(&self, lo: f64, hi: f64, pts: &[Candidate]) -> Result<CountCertificate> {
        let have = Self::in_window(pts, lo, hi);
        let mut last = Error::Quadrature { residual: f64::NAN };
        for shift in [0.0, 0.3, -0.3, 0.6] {
            let (l, h) = (lo + shift * self.margin(lo), hi + shift * self.margin(hi));
            if Self::in_window(pts, l, h) != have || l < 1.0 {
                continue;
            }
            match count_argument_principle(self.p, self.a, Rect::strip(l, h)) {
                Ok(c) => return Ok(c),
                Err(e @ Error::Quadrature { .. }) => last = e,
                Err(e) => return Err(e),
            }
        }
        Err(last)
    }

    /// Finds the sub-windows of `(lo, hi]` holding fewer points than the
    /// contour count `want` and searches them densely.
    fn repair(&self, lo: f64, hi: f64, want: i64, pts: &mut Vec<Candidate>, depth: usize) -> Result<()> {
        let have = Self::in_window(pts, lo, hi) as i64;
        if want == have {
            return Ok(());
        }
        if want < have {
            return Err(Error::Incomplete { lo, hi, found: have as usize, counted: want });
        }
        let width = hi - lo;
        if width <= 3.0 * spacing(hi, self.p) || depth >= MAX_SPLIT_DEPTH {
            let cells = (width / spacing(hi, self.p)).ceil().max(1.0) as usize;
            let n = 16 * cells;
            let mut starts = Vec::with_capacity(3 * n);
            for j in 0..n {
                let t = lo + (j as f64 + 0.5) * width / n as f64;
                for beta in [None, Some(0.2), Some(0.8)] {
                    starts.push(self.start(t, beta));
                }
            }
            let found = self
                .solve(&starts)
                .into_iter()
                .filter(|c| c.s.im > lo && c.s.im <= hi)
                .collect();
            self.merge(pts, found);
            return Ok(());
        }
        let mid = self.edge(0.5 * (lo + hi), pts);
        let mid = if mid > lo && mid < hi { mid } else { 0.5 * (lo + hi) };
        let left = self.count(lo, mid, pts)?.count;
        self.repair(lo, mid, left, pts, depth + 1)?;
        self.repair(mid, hi, want - left, pts, depth + 1)
    }
}

/// All `a`-points with `T1 < γ ≤ T2`, certified complete by the argument
/// principle on `(0, 1) × (T1, T2)` (edges nudged off nearby roots).
pub fn enumerate(p: &DeltaParams, a: C64, t1: f64, t2: f64, cfg: &APointConfig) -> Result<Enumeration> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    if !(t1 >= cfg.t_a && t2 > t1) {
        return Err(domain(format!("need t_a = {} <= T1 < T2, got ({t1}, {t2}]", cfg.t_a)));
    }
    let search = Search { p, a, cfg };
    let from_cutoff = t1 == cfg.t_a;
    let lo_pad = (t1 - 2.0 * spacing(t1, p)).max(cfg.t_a);
    let hi_pad = t2 + 2.0 * spacing(t2, p);
    let mut pts = Vec::new();
    search.merge(&mut pts, search.solve(&search.seeds(lo_pad, hi_pad)?));

    let mut rounds = 0;
    let (lo, hi, certificate) = loop {
        let lo = if from_cutoff { t1 } else { search.edge(t1, &pts) };
        let hi = search.edge(t2, &pts);
        let cert = search.count(lo, hi, &pts)?;
        let have = Search::in_window(&pts, lo, hi);
        if cert.count == have as i64 {
            break (lo, hi, cert);
        }
        if rounds == MAX_ROUNDS || cert.count < have as i64 {
            return Err(Error::Incomplete { lo, hi, found: have, counted: cert.count });
        }
        search.repair(lo, hi, cert.count, &mut pts, 0)?;
        rounds += 1;
    };

    let base = if from_cutoff {
        0
    } else {
        search.count(cfg.t_a, lo, &pts)?.count as usize
    };
    let mut suspected_multiple = Vec::new();
    let points: Vec<APoint> = pts
        .iter()
        .filter(|c| c.s.im > lo && c.s.im <= hi)
        .enumerate()
        .map(|(i, c)| {
            let n = base + i + 1;
            if c.multiple {
                suspected_multiple.push(n);
            }
            APoint { n, beta: c.s.re, gamma: c.s.im, residual: c.residual }
        })
        .collect();
    Ok(Enumeration {
        set: PointSet { params: *p, a, t_a: cfg.t_a, lower: t1, upper: t2, points },
        certificate,
        repair_rounds: rounds,
        suspected_multiple,
    })
}

/// Chooses `t_a` for `(q, δ, a)`: the highest half-cell height (phase
/// `arg a + π`) not above `max(1, 4π/q, 2πe/q, (2π/q) e^{|log|a||/0.35})`,
/// moved up one cell at a time until `(t_a, t_a + 50]` certifies.
pub fn calibrate(p: &DeltaParams, a: C64) -> Result<APointConfig> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    let q = p.q() as f64;
    let floor = (4.0 * PI / q).max(1.0);
    let t0 = floor
        .max(2.0 * PI * E / q)
        .max(2.0 * PI / q * (a.norm().ln().abs() / 0.35).exp());
    let target = principal_arg(a) + PI;
    let mut t = phase_cells(p, target, floor, t0)?
        .last()
        .map(|&(_, t)| t)
        .unwrap_or(floor);
    let mut last = None;
    for _ in 0..20 {
        let cfg = APointConfig::with_cutoff(t);
        match enumerate(p, a, t, t + 50.0, &cfg) {
            Ok(_) => return Ok(cfg),
            Err(e) => last = Some(e),
        }
        let ahead = phase_cells(p, target, t + 1e-9 * t, t + 3.0 * spacing(t, p))?;
        t = ahead.first().map_or(t + spacing(t, p), |&(_, t)| t);
    }
    Err(last.unwrap_or_else(|| domain("calibration failed")))
}
