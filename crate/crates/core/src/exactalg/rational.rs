//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps the
//! fraction reduced with a positive denominator. This module only adds the
//! textual syntax (`"p/q"` or `"p"`) and a few conveniences.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{JkError, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || JkError::Parse(format!("invalid rational {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(JkError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = num_integer::lcm(l, r.denom().clone());
    }
    l
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
