//! Scalar abstraction over the two numeric modes.
//!
//! Every builder in this crate is generic over [`Scalar`], so the same
//! arithmetic runs either in `f64` or in exact arbitrary-precision rationals
//! ([`Rational`]). The rational path is the authoritative one in tests; the
//! float path is validated against it (see [`crate::certify`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Field operations needed by the polynomial and family machinery.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic in this type is exact (no rounding).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Exact integer value, if this scalar is one.
    fn to_integer(&self) -> Option<i64>;
    /// Deterministic string form used in serialized documents: `num/den` for
    /// rationals, 17 significant digits for floats.
    fn repr(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_integer(&self) -> Option<i64> {
        if self.fract() == 0.0 && self.abs() < 2f64.powi(53) {
            Some(*self as i64)
        } else {
            None
        }
    }
    fn repr(&self) -> String {
        format_f64(*self)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        <Rational as Signed>::is_positive(self)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_integer(&self) -> Option<i64> {
        if self.denom().is_one() {
            self.numer().to_i64()
        } else {
            None
        }
    }
    fn repr(&self) -> String {
        rational_string(self)
    }
}

/// Fixed float formatting for serialized output: 17 significant digits,
/// enough to round-trip any `f64` and byte-stable across runs.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Converts a rational to the nearest `f64`, robust against numerators or
/// denominators far outside the `f64` exponent range (e.g. binomial weights
/// with denominator `2^1024`).
pub fn rational_to_f64(q: &Rational) -> f64 {
    if <Rational as Zero>::is_zero(q) {
        return 0.0;
    }
    let negative = q.numer().sign() == Sign::Minus;
    let a = q.numer().magnitude().clone();
    let b = q.denom().magnitude().clone();
    // Scale the integer quotient to ~80 significant bits, then undo the shift.
    let shift: i64 = 80 - (a.bits() as i64 - b.bits() as i64);
    let t = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    let v = ldexp(t.to_f64().unwrap_or(f64::INFINITY), -shift);
    if negative {
        -v
    } else {
        v
    }
}

/// `x * 2^e` with exponents beyond the single-step `powi` range split in two.
fn ldexp(x: f64, e: i64) -> f64 {
    if e.abs() <= 1000 {
        x * 2f64.powi(e as i32)
    } else {
        let half = e / 2;
        x * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }
}

/// Parses either a decimal float or an exact `num/den` string.
///
/// `"1/2"` and `"-3/7"` yield rationals; `"0.5"` yields a float. Used by the
/// CLI to decide whether the exact path is available.
#[derive(Debug, Clone, PartialEq)]
pub enum NumberArg {
    Exact(Rational),
    Float(f64),
}

impl NumberArg {
    pub fn parse(s: &str) -> Option<NumberArg> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().ok()?;
            let den: i64 = den.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            return Some(NumberArg::Exact(Rational::new(num.into(), den.into())));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Some(NumberArg::Exact(Rational::from_integer(v.into())));
        }
        s.parse::<f64>().ok().map(NumberArg::Float)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NumberArg::Exact(q) => rational_to_f64(q),
            NumberArg::Float(v) => *v,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            NumberArg::Exact(q) => Some(q),
            NumberArg::Float(_) => None,
        }
    }
}

/// Renders a rational as the `num/den` form used in serialized documents.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
