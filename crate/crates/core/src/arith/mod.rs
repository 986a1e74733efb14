//! Exact arithmetic: rationals, polynomials in `q`, and reduced rational
//! functions in `q`. Nothing in here uses floating point.

mod qpoly;
mod ratfunc;
mod rational;
pub mod zpoly;

pub use qpoly::QPoly;
pub use ratfunc::QRatFunc;
pub use rational::Rational;

use std::fmt;

use crate::error::Result;

/// An exact field usable as a coefficient domain for series and
/// polynomials in `x`.
pub trait ExactField: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by a rational scalar.
    fn scale(&self, s: &Rational) -> Self {
        self.mul(&Self::from_rational(s))
    }
}

impl ExactField for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn pow(&self, exp: u32) -> Self {
        self.powu(exp)
    }
}

impl ExactField for QRatFunc {
    fn zero() -> Self {
        QRatFunc::zero()
    }
    fn one() -> Self {
        QRatFunc::one()
    }
    fn is_zero(&self) -> bool {
        QRatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        QRatFunc::inv(self)
    }
    fn from_rational(r: &Rational) -> Self {
        QRatFunc::from_rational(r.clone())
    }
    fn scale(&self, s: &Rational) -> Self {
        self.scale_by(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat() -> impl Strategy<Value = Rational> {
        (-1000i64..=1000, 1i64..=1000).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
            }
        }

        #[test]
        fn rational_canonical(a in rat()) {
            use num_integer::Integer;
            prop_assert!(a.denom() >= &num_bigint::BigInt::from(1));
            prop_assert!(a.numer().gcd(a.denom()) == num_bigint::BigInt::from(1) || a.is_zero());
        }

        #[test]
        fn rational_string_round_trip(a in rat()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
        }
    }
}
