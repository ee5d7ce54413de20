//! Scalar backends for every algorithm in the crate.
//!
//! Two backends are supported: exact rational arithmetic (`num::BigRational`),
//! which never rounds, and standard `f64`. Generic code dispatches on
//! [`Scalar::EXACT`] where the algorithm itself must differ (pivot selection,
//! determinant routine, characteristic polynomial).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number type usable throughout the crate.
///
/// `num_traits::Signed` supplies ring/field operations, `abs`, and zero/one;
/// the extra methods below cover conversion and parsing.
pub trait Scalar:
    num::traits::Signed + Clone + PartialOrd + std::fmt::Debug + std::fmt::Display + 'static
{
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// Best-effort conversion to `f64`, used for magnitudes and diagnostics.
    fn approx(&self) -> f64;

    /// Lossy import of an `f64` (identity for the float backend; only used on
    /// paths where the float backend is active or exactness is not claimed).
    fn from_approx(v: f64) -> Self;

    /// Parses decimal literals (`"0.25"`, `"-3"`, `"1e-3"`) and fractions
    /// (`"22/7"`). The rational backend parses decimals exactly.
    fn parse_number(text: &str) -> Result<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn approx(&self) -> f64 {
        *self
    }

    fn from_approx(v: f64) -> Self {
        v
    }

    fn parse_number(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let num: f64 = n.trim().parse().map_err(|_| Error::InvalidNumber {
                text: text.to_string(),
            })?;
            let den: f64 = d.trim().parse().map_err(|_| Error::InvalidNumber {
                text: text.to_string(),
            })?;
            if den == 0.0 {
                return Err(Error::InvalidNumber {
                    text: text.to_string(),
                });
            }
            return Ok(num / den);
        }
        t.parse().map_err(|_| Error::InvalidNumber {
            text: text.to_string(),
        })
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn from_approx(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)))
    }

    fn parse_number(text: &str) -> Result<Self> {
        let bad = || Error::InvalidNumber {
            text: text.to_string(),
        };
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            return Ok(BigRational::new(num, den));
        }
        parse_decimal_exact(t).ok_or_else(bad)
    }
}

/// Parses `[+-]digits[.digits][eE[+-]digits]` into an exact rational.
fn parse_decimal_exact(t: &str) -> Option<BigRational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().ok()?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).ok()?;
    let scale = frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer * BigInt::from(sign));
    let shift = exp - scale;
    if shift >= 0 {
        value *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_exactly() {
        assert_eq!(BigRational::parse_number("22/7").unwrap(), rat(22, 7));
        assert_eq!(BigRational::parse_number("-3/9").unwrap(), rat(-1, 3));
        assert!(BigRational::parse_number("1/0").is_err());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(BigRational::parse_number("0.25").unwrap(), rat(1, 4));
        assert_eq!(BigRational::parse_number("-3").unwrap(), rat(-3, 1));
        assert_eq!(BigRational::parse_number("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(BigRational::parse_number("2.5e2").unwrap(), rat(250, 1));
        assert!(BigRational::parse_number("abc").is_err());
        assert!(BigRational::parse_number("").is_err());
    }

    #[test]
    fn float_backend_parses_plain_and_fraction() {
        assert_eq!(f64::parse_number("0.5").unwrap(), 0.5);
        assert_eq!(f64::parse_number("3/4").unwrap(), 0.75);
        assert!(f64::parse_number("x").is_err());
    }

    #[test]
    fn approx_and_from_int_agree() {
        assert_eq!(BigRational::from_int(7).approx(), 7.0);
        assert!(BigRational::from_int(1).is_one());
        assert_eq!(f64::from_int(-2), -2.0);
    }
}
