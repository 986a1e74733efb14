use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::zpoly::ZPoly;

/// Dense polynomial in the formal variable `q` with rational coefficients.
/// Index `k` holds the coefficient of `q^k`; the highest stored coefficient is
/// nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, q0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q0 + c)
    }

    /// Split into `content * primitive`, where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub(crate) fn to_primitive(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let (content, prim) = ZPoly::new(ints).primitive();
        let c = Rational::new(content, lcm).expect("lcm is nonzero");
        (c, prim)
    }

    pub(crate) fn from_z(scale: &Rational, z: &ZPoly) -> QPoly {
        QPoly::new(
            z.coeffs()
                .iter()
                .map(|c| scale * Rational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "q")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Human-readable rendering, lowest degree first: `1/4*q + 1/4*q^2`.
pub(crate) fn write_poly(f: &mut impl fmt::Write, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
        if first {
            if sign == "-" {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => f.write_str(var)?,
            (_, false) => write!(f, "{mag}*{var}")?,
        }
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(QPoly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_int_product() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[1, 1, 1]);
        assert_eq!(&a * &b, QPoly::from_ints(&[1, 2, 2, 1]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = QPoly::from_ints(&[3, 0, -2]);
        assert_eq!(&p + &QPoly::zero(), p);
        let a = QPoly::from_ints(&[1, 1]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).coeffs().len(), 0);
    }

    #[test]
    fn primitive_split() {
        let p = QPoly::new(vec![Rational::frac(1, 2), Rational::frac(-3, 4)]);
        let (c, z) = p.to_primitive();
        assert_eq!(c, Rational::frac(-1, 4));
        assert_eq!(QPoly::from_z(&c, &z), p);
    }

    #[test]
    fn display() {
        let p = QPoly::new(vec![Rational::one(), Rational::frac(-1, 2), Rational::zero(), Rational::from(3)]);
        assert_eq!(p.to_string(), "1 - 1/2*q + 3*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","-1/2","0","3"]"#);
    }

    fn poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-9i64..=9, 1i64..=5), 0..6).prop_map(|v| {
            QPoly::new(v.into_iter().map(|(n, d)| Rational::frac(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn degree_is_additive(p in poly(), r in poly()) {
            prop_assume!(!p.is_zero() && !r.is_zero());
            prop_assert_eq!((&p * &r).degree().unwrap(), p.degree().unwrap() + r.degree().unwrap());
        }

        #[test]
        fn serde_round_trip(p in poly()) {
            let js = serde_json::to_string(&p).unwrap();
            let back: QPoly = serde_json::from_str(&js).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
