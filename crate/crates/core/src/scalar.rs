//! Arbitrary-precision reals with a single process-wide precision context.
//!
//! Precision is counted in significant decimal digits `p` (default 60,
//! never below 30). Values are MPFR floats carrying `ceil(p * log2 10)`
//! mantissa bits plus a few guard bits, so every tolerance of the form
//! `10^(k - p)` sits comfortably above the rounding floor.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 60;
pub const MIN_PRECISION: u32 = 30;
const GUARD_BITS: u32 = 16;

/// Environment variable consulted by [`precision_from_env`].
pub const PRECISION_ENV: &str = "MSF_PRECISION";

static PRECISION: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION);

/// Current precision in significant decimal digits.
pub fn precision() -> u32 {
    PRECISION.load(AtomicOrdering::Relaxed)
}

/// Sets the global precision. Meant to be called once at startup, before
/// any values are created.
pub fn set_precision(digits: u32) -> Result<()> {
    if digits < MIN_PRECISION {
        return Err(Error::Precision(digits));
    }
    PRECISION.store(digits, AtomicOrdering::Relaxed);
    Ok(())
}

/// Reads `MSF_PRECISION`, if set.
pub fn precision_from_env() -> Result<Option<u32>> {
    match std::env::var(PRECISION_ENV) {
        Ok(s) => {
            let digits: u32 = s.trim().parse().map_err(|_| {
                Error::parse(0, format!("{PRECISION_ENV}={s:?} is not a digit count"))
            })?;
            if digits < MIN_PRECISION {
                return Err(Error::Precision(digits));
            }
            Ok(Some(digits))
        }
        Err(_) => Ok(None),
    }
}

/// Mantissa bits used for new values at the current precision.
pub fn working_bits() -> u32 {
    bits_for(precision())
}

fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

#[derive(Clone)]
pub struct Scalar(Float);

impl Scalar {
    fn wrap<T>(val: T) -> Self
    where
        Float: rug::Assign<T>,
    {
        Scalar(Float::with_val(working_bits(), val))
    }

    pub fn zero() -> Self {
        Self::wrap(0)
    }

    pub fn one() -> Self {
        Self::wrap(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::wrap(v)
    }

    /// Exact conversion of an `f64` (every finite double is a dyadic rational).
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 cannot become a Scalar");
        Self::wrap(v)
    }

    pub fn pi() -> Self {
        Self::wrap(rug::float::Constant::Pi)
    }

    /// `10^exp` at working precision.
    pub fn pow10(exp: i32) -> Self {
        let ten = Float::with_val(working_bits(), 10);
        Scalar(Float::with_val(working_bits(), ten.pow(exp)))
    }

    /// The precision-relative tolerance `10^(k - p)`.
    pub fn tolerance(k: i32) -> Self {
        Self::pow10(k - precision() as i32)
    }

    /// Parses a decimal string (plain or scientific notation). A decimal
    /// comma is accepted and normalized to a dot.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().replace(',', ".");
        if t.is_empty() {
            return Err(Error::parse(0, "empty number"));
        }
        let parsed =
            Float::parse(&t).map_err(|e| Error::parse(0, format!("bad number {s:?}: {e}")))?;
        let v = Float::with_val(working_bits(), parsed);
        if !v.is_finite() {
            return Err(Error::parse(0, format!("non-finite number {s:?}")));
        }
        Ok(Scalar(v))
    }

    /// Canonical decimal rendering with at most `p` significant digits and
    /// trailing zeros removed. Moderate exponents print in positional
    /// notation, everything else in scientific notation.
    pub fn to_decimal_string(&self) -> String {
        self.to_digits(precision() as usize)
    }

    /// The value as stored by the text format: rounded to `p` significant
    /// decimal digits. Idempotent.
    pub fn canonical(&self) -> Scalar {
        Scalar::parse(&self.to_decimal_string()).expect("rendered decimals parse")
    }

    /// Rendering with at most `digits` significant digits.
    pub fn to_digits(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let (neg, mantissa, exp) =
            self.0
                .to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        let exp = exp.expect("finite nonzero value has an exponent");
        let mantissa = mantissa.trim_end_matches('0');
        let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
        // value = 0.<mantissa> * 10^exp
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let len = mantissa.len() as i32;
        if (-20..=40).contains(&exp) {
            if exp <= 0 {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', (-exp) as usize));
                out.push_str(mantissa);
            } else if exp >= len {
                out.push_str(mantissa);
                out.extend(std::iter::repeat_n('0', (exp - len) as usize));
            } else {
                out.push_str(&mantissa[..exp as usize]);
                out.push('.');
                out.push_str(&mantissa[exp as usize..]);
            }
        } else {
            out.push_str(&mantissa[..1]);
            if len > 1 {
                out.push('.');
                out.push_str(&mantissa[1..]);
            }
            out.push_str(&format!("e{}", exp - 1));
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.0.abs_ref())
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.0.sqrt_ref())
    }

    pub fn square(&self) -> Self {
        Self::wrap(self.0.square_ref())
    }

    pub fn sin(&self) -> Self {
        Self::wrap(self.0.sin_ref())
    }

    pub fn cos(&self) -> Self {
        Self::wrap(self.0.cos_ref())
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    pub fn tan(&self) -> Self {
        Self::wrap(self.0.tan_ref())
    }

    pub fn acos(&self) -> Self {
        Self::wrap(self.0.acos_ref())
    }

    /// `atan2(self, x)` with `self` as the y coordinate.
    pub fn atan2(&self, x: &Scalar) -> Self {
        Self::wrap(self.0.atan2_ref(&x.0))
    }

    pub fn to_degrees(&self) -> Self {
        self * &Scalar::from_i64(180) / Scalar::pi()
    }

    pub fn from_degrees(deg: &Scalar) -> Self {
        deg * &Scalar::pi() / Scalar::from_i64(180)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Mantissa bits of this particular value.
    pub fn bits(&self) -> u32 {
        self.0.prec()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_digits(25))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_digits(d.max(1))),
            None => f.write_str(&self.to_decimal_string()),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_i64(v.into())
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::from_f64(v)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<f64> for Scalar {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Scalar {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::wrap(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
        impl $trait<f64> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: f64) -> Scalar {
                Scalar::wrap(&self.0 $op rhs)
            }
        }
        impl $trait<f64> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: f64) -> Scalar {
                &self $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::wrap(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}
