//! Scalar abstraction for walk weights.
//!
//! Weighted walk sums are products of inverse degrees, so any field-like
//! numeric type works. The exact path instantiates [`Weight`] with
//! [`Rational`]; the fast path uses `f64` (or `f32`).

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{NumAssignRef, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational used for every exact quantity.
pub type Rational = BigRational;

/// Numeric carrier for walk weights.
pub trait Weight: NumAssignRef + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// The value `num / den`.
    fn ratio(num: u64, den: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// `self^exp` by repeated squaring.
    fn powu(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &base;
            }
            let sq = base.clone();
            base *= &sq;
            exp >>= 1;
        }
        acc
    }
}

impl Weight for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Weight for f32 {
    fn ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Weight for Rational {
    fn ratio(num: u64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Builds the rational `num / den`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rational_from_uint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

/// Parses `"a/b"`, `"a"` or a terminating decimal such as `"0.7"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse rational from {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Input(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.magnitude().clone();
        let total = BigInt::from(mag) * &scale + frac;
        let total = if negative { -total } else { total };
        return Ok(Rational::new(total, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `"num/den"` in lowest terms; integers keep the `/1` suffix.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both sides down to keep the quotient representable.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

/// Decimal rendering with a fixed number of significant digits, used for
/// human-facing aggregates.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.9e}")
    }
}

pub(crate) fn is_unit_interval(p: &Rational) -> bool {
    p >= &Rational::zero() && p <= &Rational::one()
}

/// Serde adapters writing rationals as `"num/den"` strings.
pub mod serde_rational {
    use serde::Serializer;

    use super::{format_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub mod option {
        use serde::Serializer;

        use super::super::{format_rational, Rational};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&format_rational(r)),
                None => s.serialize_none(),
            }
        }
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod serde_biguint {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}
