//! Parsing and formatting helpers for exact rationals.
//!
//! Command-line inputs arrive as `"p/q"`, integer, or decimal strings; all are
//! converted to exact [`BigRational`] values (e.g. `"1.25"` becomes 5/4).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parse `"p/q"`, `"n"`, or a decimal string like `"1.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = i.abs() * &scale + f;
        let signed = if neg { -mag } else { mag };
        return Ok(BigRational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Render as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest-f64 approximation, safe for arbitrarily large numerator/denominator.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back to scaling by a power of two so both parts fit in f64 range.
    let bits_n = q.numer().bits() as i64;
    let bits_d = q.denom().bits() as i64;
    let shift = (bits_n.max(bits_d) - 900).max(0) as u64;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Sign as -1 / 0 / 1.
pub fn sign_i8(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_decimal() {
        assert_eq!(parse_rational("5/4").unwrap(), BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(parse_rational("1.25").unwrap(), BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_rational("-0.5").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational(" 9/8 ").unwrap(), BigRational::new(9.into(), 8.into()));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "x", "1.2.3", "1/ /2", "1.x"] {
            assert!(parse_rational(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&parse_rational("10/8").unwrap()), "5/4");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
    }

    #[test]
    fn f64_roundtrip_small() {
        let q = parse_rational("217/256").unwrap();
        assert_eq!(rational_to_f64(&q), 217.0 / 256.0);
    }

    #[test]
    fn f64_huge_denominator() {
        let q = BigRational::new(BigInt::from(3) << 2000, BigInt::from(4) << 2000);
        assert!((rational_to_f64(&q) - 0.75).abs() < 1e-12);
    }
}
