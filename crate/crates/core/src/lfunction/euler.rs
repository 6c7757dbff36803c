use crate::arith::primes_up_to;
use crate::periodic::DirichletCharacter;
use crate::specfun::real_pow;
use crate::{error::domain, Result, C64};

/// `Π_{p ≤ Q} (1 − χ(p) p^{−s})^{−1}`; the empty product `1` when `Q < 2`.
pub fn truncated_euler(s: C64, chi: &DirichletCharacter, big_q: f64) -> Result<C64> {
    if !(s.re > 0.0) {
        return Err(domain(format!("Euler product needs Re s > 0, got {}", s.re)));
    }
    if big_q < 2.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(primes_up_to(big_q.floor() as u64)
        .into_iter()
        .map(|p| 1.0 / (1.0 - chi.at(p as i64) * real_pow(p as f64, s)))
        .product())
}
