//! The annotated α-FCGP instance and its value calculus.

mod deannotate;
mod instance;
mod io;

pub use deannotate::{
    deannotate, deannotate_max, deannotate_max_with, deannotate_min, max_leaf_base, DeannotateError,
    DeannotationStats, PlainKernel,
};
pub use instance::{AnnotatedInstance, InstanceError};
pub use io::{parse_instance, write_instance, InstanceParseError};

use crate::rational::{fmt_rational, frac, int, parse_rational, Rational};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Max,
    Min,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Max => "max",
            Variant::Min => "min",
        }
    }

    /// Whether `val` meets the threshold `t` (≥ for Max, ≤ for Min).
    pub fn meets(self, val: &Rational, t: &Rational) -> bool {
        match self {
            Variant::Max => val >= t,
            Variant::Min => val <= t,
        }
    }

    /// `a` is at least as good as `b` in this variant's direction.
    pub fn as_good(self, a: &Rational, b: &Rational) -> bool {
        self.meets(a, b)
    }

    pub fn strictly_better(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Variant::Max => a > b,
            Variant::Min => a < b,
        }
    }

    /// `a` sorts before `b` when it is better.
    pub fn order(self, a: &Rational, b: &Rational) -> std::cmp::Ordering {
        match self {
            Variant::Max => b.cmp(a),
            Variant::Min => a.cmp(b),
        }
    }

    /// The unit shift of a threshold in the variant's "harder" direction.
    pub fn harder(self, t: &Rational, step: &Rational) -> Rational {
        match self {
            Variant::Max => t + step,
            Variant::Min => t - step,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" => Ok(Variant::Max),
            "min" => Ok(Variant::Min),
            other => Err(format!("unknown variant {other:?}, expected max or min")),
        }
    }
}

impl Serialize for Variant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// α ∈ [0, 1].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(value: Rational) -> Result<Self, String> {
        if value < Rational::zero() || value > Rational::one() {
            return Err(format!("alpha must lie in [0,1], got {}", fmt_rational(&value)));
        }
        Ok(Alpha(value))
    }

    pub fn frac(p: i128, q: i128) -> Self {
        Alpha::new(frac(p, q)).expect("alpha in [0,1]")
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_third(&self) -> bool {
        self.0 == frac(1, 3)
    }

    /// Max with α > 1/3 or Min with α < 1/3.
    pub fn is_degrading(&self, variant: Variant) -> bool {
        match variant {
            Variant::Max => self.0 > frac(1, 3),
            Variant::Min => self.0 < frac(1, 3),
        }
    }

    /// 1 − 3α.
    pub fn one_minus_three(&self) -> Rational {
        int(1) - self.0 * int(3)
    }

    /// |(1 − 3α)k|
    pub fn swap_margin(&self, k: usize) -> Rational {
        let r = self.one_minus_three() * int(k as i128);
        if r < Rational::zero() {
            -r
        } else {
            r
        }
    }

    pub fn inverse(&self) -> Option<Rational> {
        (!self.is_zero()).then(|| self.0.recip())
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl FromStr for Alpha {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Alpha::new(parse_rational(s).map_err(|e| e.to_string())?)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

/// Serializes a rational as "p/q" text.
pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}
