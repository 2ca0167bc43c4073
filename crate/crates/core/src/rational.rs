//! Exact rational numbers used for every value, threshold and bonus.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub type Rational = num_rational::Ratio<i128>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RationalError {
    #[error("expected an integer or a fraction P/Q, got {0:?}")]
    Malformed(String),
    #[error("decimal input {0:?} is not accepted; write it as a fraction P/Q")]
    Decimal(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn frac(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

pub fn from_usize(v: usize) -> Rational {
    Rational::from_integer(v as i128)
}

/// Parses "P/Q" or an integer. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, RationalError> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(RationalError::Decimal(s.to_string()));
    }
    let parse_int = |x: &str| {
        i128::from_str(x.trim()).map_err(|_| RationalError::Malformed(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(int(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q == 0 {
                return Err(RationalError::ZeroDenominator(s.to_string()));
            }
            Ok(frac(p, q))
        }
    }
}

/// Formats as "p/q", or as an integer when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Wrapper so rationals print in the "p/q" form via `Display`.
pub struct Q<'a>(pub &'a Rational);

impl fmt::Display for Q<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(self.0))
    }
}

pub fn floor_usize(r: &Rational) -> usize {
    r.floor().to_integer().max(0) as usize
}

pub fn ceil_usize(r: &Rational) -> usize {
    r.ceil().to_integer().max(0) as usize
}

/// Smallest integer strictly greater than `r`.
pub fn next_int_above(r: &Rational) -> i128 {
    r.floor().to_integer() + 1
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Least common multiple of the denominators, used to scale values to integers.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> i128 {
    it.into_iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

/// `r * d` as an integer; `d` must be a multiple of the denominator.
pub fn scaled(r: &Rational, d: i128) -> i128 {
    debug_assert!(d % r.denom() == 0);
    r.numer() * (d / r.denom())
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}
