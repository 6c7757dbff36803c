//! Textual form `a+bi` for complex numbers, as used on the command line.

use crate::{error::domain, Result, C64};

/// Parses `3`, `2i`, `-i`, `0.5-1e-3i`, `1+0i`.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || domain(format!("cannot parse complex number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let coeff = |c: &str| -> Result<f64> {
        match c {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => c.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, coeff(&body[k..])?))
        }
        None => Ok(C64::new(0.0, coeff(body)?)),
    }
}

/// Inverse of [`parse_complex`]; round-trips every finite value exactly.
pub fn format_complex(z: C64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_complex("1+0i").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5-2i").unwrap(), C64::new(-0.5, -2.0));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("3").unwrap(), C64::new(3.0, 0.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), C64::new(1e-3, 25.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("x+yi").is_err());
    }

    #[test]
    fn format_round_trips() {
        for z in [C64::new(0.1, -0.2), C64::new(-1e-300, 3.0), C64::new(2.0, -0.0)] {
            let back = parse_complex(&format_complex(z)).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }
}
