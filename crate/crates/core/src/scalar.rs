//! Exact rational scalars and their textual form.
//!
//! Text grammar: an optional `-`, one or more ASCII digits, and optionally a
//! `/` followed by digits denoting a nonzero denominator. `"0"`, `"-3"` and
//! `"7/12"` are valid; `"+1"`, `"1."`, `"1/0"` and `" 1"` are not.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = num_rational::BigRational;

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidRational(text.to_owned());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        None => BigInt::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(numer, denom))
}

/// Canonical text: `"n"` for integers, `"n/d"` otherwise.
pub fn format_scalar(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn scalar_to_f64(value: &Scalar) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes beyond f64 range.
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}
