//! Append-only JSONL cache of `a`-points.
//!
//! Line 1 is a header `{"q","delta","a_re","a_im","t_a"}`; then point
//! records `{"n","beta","gamma","residual"}`, each batch closed by a
//! coverage line `{"certified_from","certified_to"}`.

use super::{APoint, PointSet};
use crate::delta::DeltaParams;
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheHeader {
    pub q: usize,
    pub delta: i8,
    pub a_re: f64,
    pub a_im: f64,
    pub t_a: f64,
}

impl CacheHeader {
    pub fn of(set: &PointSet) -> Self {
        CacheHeader {
            q: set.params.q(),
            delta: set.params.delta(),
            a_re: set.a.re,
            a_im: set.a.im,
            t_a: set.t_a,
        }
    }

    fn matches(&self, p: &DeltaParams, a: C64) -> bool {
        self.q == p.q()
            && self.delta == p.delta()
            && self.a_re.to_bits() == a.re.to_bits()
            && self.a_im.to_bits() == a.im.to_bits()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    n: usize,
    beta: f64,
    gamma: f64,
    residual: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coverage {
    certified_from: f64,
    certified_to: f64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Record(Record),
    Coverage(Coverage),
}

/// Reads a cache. An empty file gives `Ok(None)`. With `query`, the header
/// must carry the same `(q, δ, a)`.
pub fn cache_load(path: &Path, query: Option<(&DeltaParams, C64)>) -> Result<Option<PointSet>> {
    let reader = BufReader::new(File::open(path)?);
    let mut header: Option<CacheHeader> = None;
    let mut points = Vec::new();
    let mut range: Option<(f64, f64)> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let bad = |msg: String| Error::Cache { line: line_no, msg };
        if line.trim().is_empty() {
            continue;
        }
        let Some(_) = header else {
            let h: CacheHeader = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
            if let Some((p, a)) = query {
                if !h.matches(p, a) {
                    return Err(Error::CacheMismatch(format!(
                        "file has q={} delta={} a={}+{}i, query q={} delta={} a={}",
                        h.q, h.delta, h.a_re, h.a_im, p.q(), p.delta(), a
                    )));
                }
            }
            header = Some(h);
            continue;
        };
        match serde_json::from_str::<Line>(&line).map_err(|e| bad(e.to_string()))? {
            Line::Record(r) => {
                if let Some(prev) = points.last().map(|p: &APoint| p.n) {
                    if r.n != prev + 1 {
                        return Err(bad(format!("index {} does not follow {prev}", r.n)));
                    }
                }
                points.push(APoint { n: r.n, beta: r.beta, gamma: r.gamma, residual: r.residual });
            }
            Line::Coverage(c) => {
                range = Some(match range {
                    None => (c.certified_from, c.certified_to),
                    Some((lo, hi)) if c.certified_from <= hi => (lo, hi.max(c.certified_to)),
                    Some(_) => return Err(bad("coverage has a gap".into())),
                });
            }
        }
    }
    let Some(h) = header else { return Ok(None) };
    let params = DeltaParams::new(h.q, h.delta)
        .map_err(|e| Error::Cache { line: 1, msg: e.to_string() })?;
    let (lower, upper) = range.unwrap_or((h.t_a, h.t_a));
    Ok(Some(PointSet { params, a: C64::new(h.a_re, h.a_im), t_a: h.t_a, lower, upper, points }))
}

/// Appends the part of `set` above the current coverage (creating the file
/// with a header if needed). Storing the same window twice is a no-op.
pub fn cache_store(path: &Path, set: &PointSet) -> Result<()> {
    let header = CacheHeader::of(set);
    let existing = match std::fs::metadata(path) {
        Ok(m) if m.len() > 0 => cache_load(path, Some((&set.params, set.a)))?,
        _ => None,
    };
    let mut out = BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?);
    let (from, last_n) = match &existing {
        None => {
            writeln!(out, "{}", json(&header))?;
            (set.lower, None)
        }
        Some(old) => {
            if old.t_a.to_bits() != set.t_a.to_bits() {
                return Err(Error::CacheMismatch(format!("t_a {} vs {}", old.t_a, set.t_a)));
            }
            if set.lower > old.upper {
                return Err(Error::CacheMismatch(format!(
                    "window starts at {} but the cache ends at {}",
                    set.lower, old.upper
                )));
            }
            if set.upper <= old.upper {
                return Ok(());
            }
            (old.upper, old.points.last().map(|p| p.n))
        }
    };
    let fresh: Vec<&APoint> = set.points.iter().filter(|p| p.gamma > from).collect();
    if let (Some(prev), Some(first)) = (last_n, fresh.first()) {
        if first.n != prev + 1 {
            return Err(Error::CacheMismatch(format!("index {} does not follow {prev}", first.n)));
        }
    }
    for p in fresh {
        let r = Record { n: p.n, beta: p.beta, gamma: p.gamma, residual: p.residual };
        writeln!(out, "{}", json(&r))?;
    }
    writeln!(out, "{}", json(&Coverage { certified_from: from, certified_to: set.upper }))?;
    out.flush()?;
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}
