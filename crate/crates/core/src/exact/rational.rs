//! Arbitrary-precision rational numbers.
//!
//! Backed by `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. Serialized as `"numerator/denominator"`,
//! with the denominator omitted when it is 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{LegwebError, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as "n/d", omitting "/1".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || LegwebError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}
