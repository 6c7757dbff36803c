//! Periodic arithmetical functions, their discrete Fourier transforms and
//! Dirichlet characters.

mod character;
mod r2;

pub use character::{character_decompose, character_table, CharacterDecomposition, DirichletCharacter};
pub use r2::{r2_factor, R2Factor};

use crate::{arith::unit_root, Error, Result, C64};
use serde::{Deserialize, Serialize};

const PARITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

impl Parity {
    /// `δ = ±1`, or `None` for [`Parity::Neither`].
    pub fn sign(self) -> Option<i8> {
        match self {
            Parity::Even => Some(1),
            Parity::Odd => Some(-1),
            Parity::Neither => None,
        }
    }
}

/// A `q`-periodic function `f : ℤ → ℂ`, stored on residues `1..=q`
/// (residue `q` stands for `0 mod q`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PeriodicJson", into = "PeriodicJson")]
pub struct PeriodicFunction {
    values: Vec<C64>,
    parity: Parity,
    zero: bool,
}

#[derive(Serialize, Deserialize)]
struct PeriodicJson {
    q: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<PeriodicJson> for PeriodicFunction {
    type Error = Error;
    fn try_from(j: PeriodicJson) -> Result<Self> {
        if j.re.len() != j.im.len() {
            return Err(Error::LengthMismatch { expected: j.re.len(), got: j.im.len() });
        }
        let values = j.re.iter().zip(&j.im).map(|(&r, &i)| C64::new(r, i)).collect();
        PeriodicFunction::new(j.q, values)
    }
}

impl From<PeriodicFunction> for PeriodicJson {
    fn from(f: PeriodicFunction) -> Self {
        PeriodicJson {
            q: f.q(),
            re: f.values.iter().map(|z| z.re).collect(),
            im: f.values.iter().map(|z| z.im).collect(),
        }
    }
}

impl PeriodicFunction {
    pub fn new(q: usize, values: Vec<C64>) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroPeriod);
        }
        if values.len() != q {
            return Err(Error::LengthMismatch { expected: q, got: values.len() });
        }
        let zero = values.iter().all(|z| *z == C64::new(0.0, 0.0));
        let mut f = PeriodicFunction { values, parity: Parity::Neither, zero };
        f.parity = f.detect_parity();
        Ok(f)
    }

    pub fn from_real(q: usize, values: &[f64]) -> Result<Self> {
        Self::new(q, values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The constant function `1`, whose series is `ζ(s)`.
    pub fn one() -> Self {
        Self::new(1, vec![C64::new(1.0, 0.0)]).expect("q = 1")
    }

    fn detect_parity(&self) -> Parity {
        let scale = self.values.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
        let q = self.q() as i64;
        let close = |sign: f64| {
            (1..=q).all(|n| (self.at(n) - self.at(-n) * sign).norm() <= PARITY_TOL * scale)
        };
        if close(1.0) {
            Parity::Even
        } else if close(-1.0) {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }

    pub fn q(&self) -> usize {
        self.values.len()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `δ`, or an error when `f` is neither even nor odd.
    pub fn delta_sign(&self) -> Result<i8> {
        self.parity.sign().ok_or(Error::NoParity)
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Values on residues `1..=q`.
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `f(n)` for any integer `n`.
    pub fn at(&self, n: i64) -> C64 {
        self.values[(n - 1).rem_euclid(self.q() as i64) as usize]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.q(), self.values.iter().map(|z| z.conj()).collect()).expect("same shape")
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.q(), self.values.iter().map(|z| z * c).collect()).expect("same shape")
    }

    /// `f^±(n) = q^{-1/2} Σ_{a mod q} f(a) e(±an/q)`.
    pub fn dft(&self, sign: i8) -> Self {
        let q = self.q() as u64;
        let norm = 1.0 / (q as f64).sqrt();
        let values = (1..=q)
            .map(|n| {
                let s: C64 = (1..=q)
                    .map(|a| self.values[a as usize - 1] * unit_root(sign as i64 * ((a * n) % q) as i64, q))
                    .sum();
                s * norm
            })
            .collect();
        Self::new(q as usize, values).expect("same shape")
    }

    /// Residue of `L(s; f)` at `s = 1`, i.e. the mean of `f` over a period.
    pub fn residue_at_one(&self) -> C64 {
        self.values.iter().sum::<C64>() / self.q() as f64
    }
}
