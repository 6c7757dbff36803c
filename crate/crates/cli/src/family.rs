//! The `(q, δ, a)` triple and certified point sets, optionally backed by a
//! JSONL cache.

use crate::{CliError, CliResult};
use lperiodic::apoints::{cache_load, cache_store, calibrate, enumerate, APointConfig, PointSet};
use lperiodic::cplx::parse_complex;
use lperiodic::delta::DeltaParams;
use lperiodic::periodic::PeriodicFunction;
use lperiodic::stats::main_term;
use lperiodic::C64;
use serde::Serialize;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Family {
    pub q: usize,
    pub delta: i8,
    pub a: C64,
}

impl Family {
    pub fn new(q: usize, delta: i8, a: C64) -> Self {
        Family { q, delta, a }
    }

    pub fn params(&self) -> CliResult<DeltaParams> {
        Ok(DeltaParams::new(self.q, self.delta)?)
    }

    pub fn label(&self) -> String {
        let sign = if self.delta == 1 { '+' } else { '-' };
        format!("({},{sign},{})", self.q, lperiodic::cplx::format_complex(self.a))
    }
}

/// Points certified on `(t_a, T]`. With a cache, the stored range is reused
/// and extended in place.
pub fn points_up_to(fam: &Family, t: f64, cache: Option<&Path>) -> CliResult<PointSet> {
    let p = fam.params()?;
    let existing = match cache {
        Some(path) if path.exists() => cache_load(path, Some((&p, fam.a)))?,
        _ => None,
    };
    let set = match existing {
        Some(set) if set.upper >= t => return Ok(set),
        Some(set) => {
            let cfg = APointConfig::with_cutoff(set.t_a);
            let more = enumerate(&p, fam.a, set.upper.max(set.t_a), t, &cfg)?.set;
            let mut points = set.points;
            points.extend(more.points);
            PointSet { upper: t, points, ..set }
        }
        None => {
            let cfg = calibrate(&p, fam.a)?;
            if t <= cfg.t_a {
                return Err(CliError::Usage(format!("T = {t} is below the cutoff t_a = {}", cfg.t_a)));
            }
            enumerate(&p, fam.a, cfg.t_a, t, &cfg)?.set
        }
    };
    if let Some(path) = cache {
        cache_store(path, &set)?;
    }
    Ok(set)
}

/// At least `n` points from the cutoff upward; the height is grown from
/// the counting main term until enough are certified.
pub fn first_points(fam: &Family, n: usize, cache: Option<&Path>) -> CliResult<PointSet> {
    let mut t = 20.0;
    while main_term(fam.q, t) < 1.05 * n as f64 + 20.0 {
        t *= 1.1;
    }
    loop {
        let set = points_up_to(fam, t.ceil(), cache)?;
        if set.points.len() >= n {
            return Ok(set);
        }
        t *= 1.1;
    }
}

/// `values` as a comma-separated list of complex numbers, or `@path` to a
/// JSON file `{"q", "re", "im"}`.
pub fn parse_function(text: &str) -> CliResult<PeriodicFunction> {
    if let Some(path) = text.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    let values = text
        .split(',')
        .map(|v| parse_complex(v.trim()))
        .collect::<lperiodic::Result<Vec<C64>>>()?;
    Ok(PeriodicFunction::new(values.len(), values)?)
}
