//! Arbitrary-precision rational scalar.
//!
//! Every coordinate and every derived quantity in this crate is a `Scalar`.
//! There is no floating point on any decision path: equality and order are
//! decidable, so predicates such as exact cocircularity are meaningful.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number.
///
/// Closed under `+`, `-`, `*` and `/` (nonzero divisor; division by zero
/// panics, as it does for the primitive integer types).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    /// Builds `numer / denom`. Fails on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Parses an exact rational from an integer (`"42"`), decimal
    /// (`"-1.25"`) or fraction (`"5/4"`) string. Decimals are converted
    /// exactly, never through floating point.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidScalar(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let numer = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            return Ok(Scalar(BigRational::new(numer, denom)));
        }
        if let Some((int_part, frac_part)) = t.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.trim_start().starts_with('-');
            let int = if int_part.is_empty() || int_part == "-" || int_part == "+" {
                BigInt::zero()
            } else {
                BigInt::from_str(int_part).map_err(|_| bad())?
            };
            let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
            let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
            let numer = int * &denom + if negative { -frac } else { frac };
            return Ok(Scalar(BigRational::new(numer, denom)));
        }
        let int = BigInt::from_str(t).map_err(|_| bad())?;
        Ok(Scalar(BigRational::from_integer(int)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Nearest-f64 approximation. Rendering only; never feed this back
    /// into a predicate.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from(v as i64)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Scalar::parse(s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    #[test]
    fn parses_integers_decimals_and_fractions() {
        assert_eq!(s("42"), Scalar::from(42));
        assert_eq!(s("-3"), Scalar::from(-3));
        assert_eq!(s("1.25"), Scalar::ratio(5, 4));
        assert_eq!(s("-0.5"), Scalar::ratio(-1, 2));
        assert_eq!(s("5/4"), Scalar::ratio(5, 4));
        assert_eq!(s("-6/4"), Scalar::ratio(-3, 2));
        assert_eq!(s("10/-4"), Scalar::ratio(-5, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1.2.3", "1/0", "0x10", "1.5e3", "nan", "1."] {
            assert!(Scalar::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Scalar::ratio(1, 3);
        let sum = &third + &third + third.clone();
        assert_eq!(sum, Scalar::one());
        assert_eq!(Scalar::ratio(1, 2) * Scalar::ratio(2, 3), Scalar::ratio(1, 3));
        assert_eq!(Scalar::ratio(1, 2) / Scalar::ratio(3, 4), Scalar::ratio(2, 3));
        assert_eq!(Scalar::from(1) - Scalar::ratio(1, 3), Scalar::ratio(2, 3));
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-7", "5/4", "-11/3"] {
            assert_eq!(s(text).to_string(), text);
        }
        // decimals normalize to reduced fractions
        assert_eq!(s("1.25").to_string(), "5/4");
    }

    proptest! {
        #[test]
        fn parse_display_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..10_000) {
            let x = Scalar::ratio(n, d);
            prop_assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn ordering_matches_cross_multiplication(
            a in -1000i64..1000, b in 1i64..100,
            c in -1000i64..1000, d in 1i64..100,
        ) {
            let lhs = Scalar::ratio(a, b);
            let rhs = Scalar::ratio(c, d);
            prop_assert_eq!(lhs.cmp(&rhs), (a * d).cmp(&(c * b)));
        }
    }
}
