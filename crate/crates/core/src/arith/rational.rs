use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always held in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `n / d` for small literals; panics when `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Rational::new(n, d).expect("literal fraction with zero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    pub fn powu(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        Rational((&a.0 + &b.0) / BigInt::from(2))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Largest dyadic `m / 2^s` not above `self`, keeping about `bits`
    /// significant bits. Used to keep probe points cheap.
    pub fn snap_dyadic(&self, bits: u64) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mag = self.numer().bits() as i64 - self.denom().bits() as i64;
        let shift = (bits as i64 - mag).max(0) as usize;
        let scaled = (&self.0 * BigRational::from_integer(BigInt::one() << shift))
            .floor()
            .to_integer();
        Rational(BigRational::new(scaled, BigInt::one() << shift))
    }

    /// Fixed-point decimal rendering with `digits` fractional digits, rounded
    /// half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = self.0.abs() * BigRational::from_integer(scale.clone());
        let rounded = scaled.round().to_integer();
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let sign = if self.is_negative() && !rounded.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
        }
    }

    /// Lossy conversion, for diagnostics only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p`, `p/q`, and decimal literals with an optional exponent
/// (`1.5`, `-0.25`, `1e-10`, `2.5E3`); decimals convert exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            return Rational::new(n, d).map_err(|_| err());
        }
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
            None => (t, 0),
        };
        let (neg, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let all = format!("{whole}{frac}");
        let mut value: BigInt = all.parse().map_err(|_| err())?;
        if neg {
            value = -value;
        }
        let ten = Rational::from_integer(10);
        let shift = exponent - frac.len() as i32;
        let r = Rational::from_integer(value) * ten.pow(shift)?;
        Ok(r)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the primitive types; `checked_div` is the
// fallible form.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_addition() {
        assert_eq!(r("1/3") + r("1/6"), r("1/2"));
    }

    #[test]
    fn zero_absorbs() {
        assert!((r("-17/5") * Rational::zero()).is_zero());
    }

    #[test]
    fn self_division_is_one() {
        assert_eq!(r("3/14").checked_div(&r("3/14")).unwrap(), Rational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(r("1/2").checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn canonical_form() {
        let x = Rational::new(6, -4).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Rational::from_integer(7).to_string(), "7");
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(r("1.5"), Rational::frac(3, 2));
        assert_eq!(r("-0.25"), Rational::frac(-1, 4));
        assert_eq!(r("1e-10"), Rational::new(1, 10_000_000_000i64).unwrap());
        assert_eq!(r("2.5E3"), Rational::from_integer(2500));
        assert_eq!(r(".5"), Rational::frac(1, 2));
        assert_eq!(r(" 22/ 7"), Rational::frac(22, 7));
        for bad in ["", "abc", "1/0", "1.2.3", "e5", "1e", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::frac(1, 3).to_decimal(5), "0.33333");
        assert_eq!(Rational::frac(2, 3).to_decimal(3), "0.667");
        assert_eq!(Rational::frac(-1, 8).to_decimal(2), "-0.13");
        assert_eq!(Rational::frac(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(Rational::from_integer(12).to_decimal(0), "12");
    }

    #[test]
    fn dyadic_snap_is_a_lower_bound() {
        let x = Rational::frac(1, 3);
        let s = x.snap_dyadic(20);
        assert!(s <= x);
        assert!(&x - &s < Rational::new(1, 1 << 20).unwrap());
        assert!(s.denom().bits() <= 23);
    }

    #[test]
    fn serde_as_string() {
        let x = Rational::frac(-5, 12);
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, "\"-5/12\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
