use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qpoly::{write_poly, QPoly};
use super::rational::Rational;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// A rational function of `q` over the rationals, kept in canonical reduced
/// form so that structural equality is mathematical equality.
///
/// Internally the value is `scale * num / den` with `num` and `den` coprime,
/// primitive integer polynomials with positive leading coefficients. The
/// public view ([`num`](Self::num), [`den`](Self::den)) moves the scale into
/// the numerator and makes the denominator monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFunc {
    scale: Rational,
    num: ZPoly,
    den: ZPoly,
}

impl QRatFunc {
    pub fn zero() -> Self {
        QRatFunc { scale: Rational::zero(), num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        QRatFunc::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            return QRatFunc::zero();
        }
        QRatFunc { scale: r, num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        if p.is_zero() {
            return QRatFunc::zero();
        }
        let (scale, num) = p.to_primitive();
        QRatFunc { scale, num, den: ZPoly::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QRatFunc::from_qpoly(&QPoly::q())
    }

    /// Reduce `n / d` to canonical form.
    pub fn new(n: &QPoly, d: &QPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (cn, zn) = n.to_primitive();
        let (cd, zd) = d.to_primitive();
        Ok(QRatFunc::from_parts(&cn / &cd, zn, zd))
    }

    fn from_parts(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return QRatFunc::zero();
        }
        let (cn, num) = num.primitive();
        let (cd, den) = den.primitive();
        let scale = scale * Rational::new(cn, cd).expect("nonzero content");
        let g = zpoly::gcd(&num, &den);
        if g.is_one() {
            return QRatFunc { scale, num, den };
        }
        QRatFunc {
            scale,
            num: num.div_exact(&g).expect("gcd divides numerator"),
            den: den.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_one() && self.den.is_one()).then(|| self.scale.clone())
    }

    fn den_lead(&self) -> Rational {
        Rational::from_integer(self.den.leading().expect("nonzero denominator").clone())
    }

    /// Numerator of the representative with monic denominator.
    pub fn num(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly::from_z(&(&self.scale / &self.den_lead()), &self.num)
    }

    /// Monic denominator.
    pub fn den(&self) -> QPoly {
        QPoly::from_z(&self.den_lead().recip().expect("nonzero"), &self.den)
    }

    /// Degrees of (numerator, denominator).
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den().eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num().eval(q0) / d)
    }

    pub fn scale_by(&self, s: &Rational) -> QRatFunc {
        if s.is_zero() || self.is_zero() {
            return QRatFunc::zero();
        }
        QRatFunc { scale: &self.scale * s, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<QRatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRatFunc::from_parts(self.scale.recip()?, self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QRatFunc) -> Result<QRatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> QRatFunc {
        (0..exp).fold(QRatFunc::one(), |acc, _| &acc * self)
    }
}

impl Add for &QRatFunc {
    type Output = QRatFunc;

    fn add(self, rhs: &QRatFunc) -> QRatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = zpoly::gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");

        let l = self.scale.denom().lcm(rhs.scale.denom());
        let s1: BigInt = self.scale.numer() * (&l / self.scale.denom());
        let s2: BigInt = rhs.scale.numer() * (&l / rhs.scale.denom());
        let n = self.num.mul(&d2).scale(&s1).add(&rhs.num.mul(&d1).scale(&s2));
        if n.is_zero() {
            return QRatFunc::zero();
        }
        let (cn, n) = n.primitive();
        let scale = Rational::new(cn, l).expect("nonzero lcm");
        // Only factors of the shared denominator part can cancel.
        let h = zpoly::gcd(&n, &g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.div_exact(&h).expect("divides"), g.div_exact(&h).expect("divides"))
        };
        QRatFunc { scale, num: n, den: d1.mul(&d2).mul(&g) }
    }
}

impl Neg for &QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        QRatFunc { scale: -&self.scale, num: self.num.clone(), den: self.den.clone() }
    }
}

impl Sub for &QRatFunc {
    type Output = QRatFunc;
    fn sub(self, rhs: &QRatFunc) -> QRatFunc {
        self + &(-rhs)
    }
}

impl Mul for &QRatFunc {
    type Output = QRatFunc;

    fn mul(self, rhs: &QRatFunc) -> QRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return QRatFunc::zero();
        }
        let g1 = zpoly::gcd(&self.num, &rhs.den);
        let g2 = zpoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = rhs.den.div_exact(&g1).expect("divides");
        let n2 = rhs.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        QRatFunc { scale: &self.scale * &rhs.scale, num: n1.mul(&n2), den: d1.mul(&d2) }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for QRatFunc {
            type Output = QRatFunc;
            fn $m(self, rhs: QRatFunc) -> QRatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        -&self
    }
}

impl From<Rational> for QRatFunc {
    fn from(r: Rational) -> Self {
        QRatFunc::from_rational(r)
    }
}

impl From<&QPoly> for QRatFunc {
    fn from(p: &QPoly) -> Self {
        QRatFunc::from_qpoly(p)
    }
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num();
        if self.den.is_one() {
            return write_poly(f, num.coeffs(), "q");
        }
        f.write_str("(")?;
        write_poly(f, num.coeffs(), "q")?;
        f.write_str(")/(")?;
        write_poly(f, self.den().coeffs(), "q")?;
        f.write_str(")")
    }
}

impl fmt::Debug for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct QRatFuncRepr {
    num: QPoly,
    den: QPoly,
}

impl Serialize for QRatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QRatFuncRepr { num: self.num(), den: self.den() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QRatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = QRatFuncRepr::deserialize(deserializer)?;
        QRatFunc::new(&r.num, &r.den).map_err(serde::de::Error::custom)
    }
}
