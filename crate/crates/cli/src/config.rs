//! `key = value` run configuration. Blank lines and `#` comments are
//! ignored; every key is optional and command-line flags take precedence.

use lperiodic::cplx::{format_complex, parse_complex};
use lperiodic::C64;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {msg}")]
    Value { line: usize, key: String, msg: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityArg {
    Even,
    Odd,
}

impl ParityArg {
    pub fn sign(self) -> i8 {
        match self {
            ParityArg::Even => 1,
            ParityArg::Odd => -1,
        }
    }
}

impl FromStr for ParityArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(ParityArg::Even),
            "odd" => Ok(ParityArg::Odd),
            _ => Err(format!("expected even or odd, got `{s}`")),
        }
    }
}

impl fmt::Display for ParityArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityArg::Even => "even",
            ParityArg::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("expected json or csv, got `{s}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub q: Option<usize>,
    pub parity: Option<ParityArg>,
    pub a: Option<C64>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub newton_tol: Option<f64>,
    pub eps: Option<f64>,
    pub eta: Option<f64>,
    pub cache: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    raw.parse().map_err(|e: T::Err| ConfigError::Value { line, key: key.into(), msg: e.to_string() })
}

fn set<T>(slot: &mut Option<T>, v: T, line: usize, key: &str) -> Result<(), ConfigError> {
    if slot.replace(v).is_some() {
        return Err(ConfigError::Duplicate { line, key: key.into() });
    }
    Ok(())
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let (key, v) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, v) = (key.trim(), v.trim());
            match key {
                "q" => set(&mut c.q, value(line, key, v)?, line, key)?,
                "parity" => set(&mut c.parity, value(line, key, v)?, line, key)?,
                "a" => {
                    let a = parse_complex(v)
                        .map_err(|e| ConfigError::Value { line, key: key.into(), msg: e.to_string() })?;
                    set(&mut c.a, a, line, key)?
                }
                "t1" => set(&mut c.t1, value(line, key, v)?, line, key)?,
                "t2" => set(&mut c.t2, value(line, key, v)?, line, key)?,
                "newton_tol" => set(&mut c.newton_tol, value(line, key, v)?, line, key)?,
                "eps" => set(&mut c.eps, value(line, key, v)?, line, key)?,
                "eta" => set(&mut c.eta, value(line, key, v)?, line, key)?,
                "cache" => set(&mut c.cache, PathBuf::from(v), line, key)?,
                "format" => set(&mut c.format, value(line, key, v)?, line, key)?,
                "threads" => set(&mut c.threads, value(line, key, v)?, line, key)?,
                _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
            }
        }
        Ok(c)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.q {
            writeln!(f, "q = {v}")?;
        }
        if let Some(v) = self.parity {
            writeln!(f, "parity = {v}")?;
        }
        if let Some(v) = self.a {
            writeln!(f, "a = {}", format_complex(v))?;
        }
        for (key, v) in [
            ("t1", self.t1),
            ("t2", self.t2),
            ("newton_tol", self.newton_tol),
            ("eps", self.eps),
            ("eta", self.eta),
        ] {
            if let Some(v) = v {
                writeln!(f, "{key} = {v:?}")?;
            }
        }
        if let Some(v) = &self.cache {
            writeln!(f, "cache = {}", v.display())?;
        }
        if let Some(v) = self.format {
            writeln!(f, "format = {v}")?;
        }
        if let Some(v) = self.threads {
            writeln!(f, "threads = {v}")?;
        }
        Ok(())
    }
}
