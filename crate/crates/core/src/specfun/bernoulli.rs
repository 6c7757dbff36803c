//! Bernoulli numbers `B_2 ..= B_60` as exact fractions.

use std::sync::OnceLock;

pub const MAX_INDEX: usize = 30;

/// `(numerator, denominator)` of `B_{2k}` for `k = 1..=30`.
const TABLE: [(&str, &str); MAX_INDEX] = [
    ("1", "6"),
    ("-1", "30"),
    ("1", "42"),
    ("-1", "30"),
    ("5", "66"),
    ("-691", "2730"),
    ("7", "6"),
    ("-3617", "510"),
    ("43867", "798"),
    ("-174611", "330"),
    ("854513", "138"),
    ("-236364091", "2730"),
    ("8553103", "6"),
    ("-23749461029", "870"),
    ("8615841276005", "14322"),
    ("-7709321041217", "510"),
    ("2577687858367", "6"),
    ("-26315271553053477373", "1919190"),
    ("2929993913841559", "6"),
    ("-261082718496449122051", "13530"),
    ("1520097643918070802691", "1806"),
    ("-27833269579301024235023", "690"),
    ("596451111593912163277961", "282"),
    ("-5609403368997817686249127547", "46410"),
    ("495057205241079648212477525", "66"),
    ("-801165718135489957347924991853", "1590"),
    ("29149963634884862421418123812691", "798"),
    ("-2479392929313226753685415739663229", "870"),
    ("84483613348880041862046775994036021", "354"),
    ("-1215233140483755572040304994079820246041491", "56786730"),
];

fn ratio(num: &str, den: &str) -> f64 {
    num.parse::<f64>().expect("table literal") / den.parse::<f64>().expect("table literal")
}

/// `B_{2k}` as a double, `1 <= k <= 30`.
pub fn bernoulli_2k(k: usize) -> f64 {
    static CACHE: OnceLock<[f64; MAX_INDEX]> = OnceLock::new();
    let table = CACHE.get_or_init(|| std::array::from_fn(|i| ratio(TABLE[i].0, TABLE[i].1)));
    table[k - 1]
}

/// `B_{2k} / (2k)!`, the Euler–Maclaurin weights.
pub fn bernoulli_weight(k: usize) -> f64 {
    static CACHE: OnceLock<[f64; MAX_INDEX]> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let mut fact = 1.0;
        std::array::from_fn(|i| {
            let two_k = 2 * (i + 1);
            fact *= ((two_k - 1) * two_k) as f64;
            bernoulli_2k(i + 1) / fact
        })
    });
    table[k - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::{One, Zero};

    fn binom(n: usize, k: usize) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
    }

    #[test]
    fn table_matches_recurrence() {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=60usize {
            let s = (0..m).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binom(m + 1, j)) * &b[j]
            });
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        for k in 1..=MAX_INDEX {
            let (num, den) = TABLE[k - 1];
            let want = BigRational::new(num.parse().unwrap(), den.parse().unwrap());
            assert_eq!(b[2 * k], want, "B_{}", 2 * k);
        }
    }

    #[test]
    fn doubles() {
        assert_eq!(bernoulli_2k(1), 1.0 / 6.0);
        assert_eq!(bernoulli_2k(2), -1.0 / 30.0);
        assert!((bernoulli_weight(1) - 1.0 / 12.0).abs() < 1e-17);
        assert!((bernoulli_weight(2) + 1.0 / 720.0).abs() < 1e-18);
        // |B_{2k}|/(2k)! ~ 2/(2π)^{2k}
        let k = 30;
        let approx = 2.0 / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
        assert!((bernoulli_weight(k).abs() / approx - 1.0).abs() < 1e-12);
    }
}
