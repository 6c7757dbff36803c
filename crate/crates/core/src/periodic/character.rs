use super::PeriodicFunction;
use crate::arith::{factorize, gcd, pow_mod, totient, unit_root};
use crate::{Error, Result, C64};

/// A Dirichlet character modulo `r`, tabulated on residues `1..=r`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: usize,
    index: usize,
    values: Vec<C64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Position in [`character_table`]; the principal character is `0`.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn at(&self, n: i64) -> C64 {
        self.values[(n - 1).rem_euclid(self.modulus as i64) as usize]
    }

    pub fn to_periodic(&self) -> PeriodicFunction {
        PeriodicFunction::new(self.modulus, self.values.clone()).expect("r values")
    }
}

/// One cyclic factor of `(ℤ/rℤ)*`: discrete logs modulo a prime power.
struct Cyclic {
    prime_power: u64,
    order: u64,
    log: Vec<u64>,
}

fn primitive_root(p: u64, e: u32) -> u64 {
    let phi = p - 1;
    let ells: Vec<u64> = factorize(phi).into_iter().map(|(l, _)| l).collect();
    let mut g = (2..p)
        .find(|&g| ells.iter().all(|&l| pow_mod(g, phi / l, p) != 1))
        .unwrap_or(1);
    if e >= 2 && pow_mod(g, phi, p * p) == 1 {
        g += p;
    }
    g
}

fn cyclic_factors(p: u64, e: u32) -> Vec<Cyclic> {
    let pe = p.pow(e);
    let mut tables = Vec::new();
    if p != 2 {
        let g = primitive_root(p, e);
        let order = pe / p * (p - 1);
        let mut log = vec![0; pe as usize];
        let mut x = 1;
        for k in 0..order {
            log[x as usize] = k;
            x = x * g % pe;
        }
        tables.push(Cyclic { prime_power: pe, order, log });
    } else if e == 2 {
        let mut log = vec![0; 4];
        log[3] = 1;
        tables.push(Cyclic { prime_power: 4, order: 2, log });
    } else if e >= 3 {
        let half = pe / 4;
        let mut sign = vec![0; pe as usize];
        let mut five = vec![0; pe as usize];
        let mut x = 1;
        for k in 0..half {
            sign[(pe - x) as usize] = 1;
            five[x as usize] = k;
            five[(pe - x) as usize] = k;
            x = x * 5 % pe;
        }
        tables.push(Cyclic { prime_power: pe, order: 2, log: sign });
        tables.push(Cyclic { prime_power: pe, order: half, log: five });
    }
    tables
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// All `φ(r)` characters modulo `r`, principal first, in a fixed order.
pub fn character_table(r: usize) -> Result<Vec<DirichletCharacter>> {
    if r == 0 {
        return Err(Error::ZeroPeriod);
    }
    let factors: Vec<Cyclic> = factorize(r as u64)
        .into_iter()
        .flat_map(|(p, e)| cyclic_factors(p, e))
        .collect();
    let big = factors.iter().fold(1, |l, c| lcm(l, c.order));
    let count = totient(r as u64) as usize;
    let mut table = Vec::with_capacity(count);
    for index in 0..count {
        // Mixed-radix digits of `index`, last factor least significant.
        let mut exps = vec![0u64; factors.len()];
        let mut rest = index as u64;
        for (slot, c) in exps.iter_mut().zip(&factors).rev() {
            *slot = rest % c.order;
            rest /= c.order;
        }
        let values = (1..=r as u64)
            .map(|n| {
                if gcd(n, r as u64) != 1 {
                    return C64::new(0.0, 0.0);
                }
                let turn = factors.iter().zip(&exps).fold(0, |acc, (c, &j)| {
                    let l = c.log[(n % c.prime_power) as usize];
                    (acc + j * l % c.order * (big / c.order)) % big
                });
                unit_root(turn as i64, big)
            })
            .collect();
        table.push(DirichletCharacter { modulus: r, index, values });
    }
    Ok(table)
}

/// `ψ = Σ c_i χ_i` over the characters modulo `r`.
#[derive(Clone, Debug)]
pub struct CharacterDecomposition {
    pub terms: Vec<(C64, DirichletCharacter)>,
}

impl CharacterDecomposition {
    pub fn coefficients(&self) -> Vec<C64> {
        self.terms.iter().map(|(c, _)| *c).collect()
    }

    /// `Σ c_i χ_i(n)`.
    pub fn recombine(&self, n: i64) -> C64 {
        self.terms.iter().map(|(c, chi)| c * chi.at(n)).sum()
    }
}

/// Expands `ψ` (supported on residues coprime to its period) in characters.
pub fn character_decompose(psi: &PeriodicFunction) -> Result<CharacterDecomposition> {
    let r = psi.q();
    for n in 1..=r {
        if gcd(n as u64, r as u64) != 1 && psi.at(n as i64) != C64::new(0.0, 0.0) {
            return Err(Error::SupportViolation { residue: n, modulus: r });
        }
    }
    let phi = totient(r as u64) as f64;
    let terms = character_table(r)?
        .into_iter()
        .map(|chi| {
            let c: C64 = (1..=r as i64).map(|n| psi.at(n) * chi.at(n).conj()).sum();
            (c / phi, chi)
        })
        .collect();
    Ok(CharacterDecomposition { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t1[0].values(), &[C64::new(1.0, 0.0)]);
        let t3 = character_table(3).unwrap();
        assert_eq!(t3.len(), 2);
        assert!(t3[0].is_principal());
        let want = [1.0, -1.0, 0.0];
        for (z, w) in t3[1].values().iter().zip(want) {
            assert!((z - C64::new(w, 0.0)).norm() < 1e-15);
        }
        assert_eq!(character_table(8).unwrap().len(), 4);
        assert!(character_table(0).is_err());
    }

    #[test]
    fn tables_are_orthogonal_and_multiplicative() {
        for r in 1..=40usize {
            let table = character_table(r).unwrap();
            let phi = totient(r as u64) as usize;
            assert_eq!(table.len(), phi, "r = {r}");
            for (i, a) in table.iter().enumerate() {
                for (j, b) in table.iter().enumerate() {
                    let s: C64 = (1..=r as i64).map(|n| a.at(n) * b.at(n).conj()).sum();
                    let want = if i == j { phi as f64 } else { 0.0 };
                    assert!((s - C64::new(want, 0.0)).norm() < 1e-10, "r={r} i={i} j={j}");
                }
                for m in 1..=r as i64 {
                    for n in 1..=r as i64 {
                        let lhs = a.at(m * n);
                        assert!((lhs - a.at(m) * a.at(n)).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let psi = PeriodicFunction::from_real(3, &[1.0, 2.0, 0.0]).unwrap();
        let c = character_decompose(&psi).unwrap().coefficients();
        assert!((c[0] - C64::new(1.5, 0.0)).norm() < 1e-15);
        assert!((c[1] - C64::new(-0.5, 0.0)).norm() < 1e-15);
        let bad = PeriodicFunction::from_real(3, &[1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(character_decompose(&bad), Err(Error::SupportViolation { residue: 3, .. })));
        let chi = &character_table(5).unwrap()[2];
        let c = character_decompose(&chi.to_periodic()).unwrap().coefficients();
        for (i, ci) in c.iter().enumerate() {
            let want = if i == 2 { 1.0 } else { 0.0 };
            assert!((ci - C64::new(want, 0.0)).norm() < 1e-14);
        }
    }
}
