//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! `BigRational` keeps every value reduced with a positive denominator, and its
//! `Display` prints integers without a `/1` suffix, which is exactly the
//! textual form used by reports and game files.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn uint(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Smallest integer not below `value`.
pub fn ceil(value: &Rational) -> BigInt {
    value.numer().div_ceil(value.denom())
}

/// Parses `a`, `a/b`, or `-a/b`. Rejects zero denominators.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("invalid rational `{text}`"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn parse_nonnegative(text: &str) -> Result<Rational> {
    let value = parse(text)?;
    if value.is_negative() {
        return Err(Error::Domain(format!("value `{text}` must be nonnegative")));
    }
    Ok(value)
}

/// Comma-separated list of rationals.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse).collect()
}

pub fn format_list(values: &[Rational]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Exact test of `a <= sqrt(n) * b` for nonnegative `a`, `b`.
pub fn le_sqrt_times(a: &Rational, n: u64, b: &Rational) -> bool {
    a * a <= uint(n) * b * b
}

/// Exact test of `a >= sqrt(n) * b` for nonnegative `a`, `b`.
pub fn ge_sqrt_times(a: &Rational, n: u64, b: &Rational) -> bool {
    a * a >= uint(n) * b * b
}
