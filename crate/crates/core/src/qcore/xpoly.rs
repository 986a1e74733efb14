use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{ExactField, Rational};

/// Dense polynomial in `x` over an exact coefficient field. Index `k` holds
/// the coefficient of `x^k`; no trailing zeros.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: ExactField + Deserialize<'de>"))]
#[serde(from = "Vec<C>", into = "Vec<C>")]
pub struct XPoly<C: ExactField> {
    coeffs: Vec<C>,
}

impl<C: ExactField> From<Vec<C>> for XPoly<C> {
    fn from(v: Vec<C>) -> Self {
        XPoly::new(v)
    }
}

impl<C: ExactField> From<XPoly<C>> for Vec<C> {
    fn from(p: XPoly<C>) -> Self {
        p.coeffs
    }
}

impl<C: ExactField> XPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(C::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        XPoly::new(vec![c])
    }

    pub fn x() -> Self {
        XPoly::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        XPoly::new(v)
    }

    /// `x - root`.
    pub fn linear_factor(root: &C) -> Self {
        XPoly::new(vec![root.neg(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &C) -> Self {
        XPoly::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn eval(&self, x0: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.mul(x0).add(c))
    }

    /// `f(s x)`.
    pub fn dilate(&self, s: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&pw));
            pw = pw.mul(s);
        }
        XPoly::new(out)
    }

    /// `f(x + a)`, by Horner in the shifted variable.
    pub fn shift(&self, a: &C) -> Self {
        let step = XPoly::new(vec![a.clone(), C::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(XPoly::zero(), |acc, c| &(&acc * &step) + &XPoly::constant(c.clone()))
    }

    /// Classical derivative.
    pub fn derivative(&self) -> Self {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&C::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn map<D: ExactField>(&self, f: impl Fn(&C) -> D) -> XPoly<D> {
        XPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<D: ExactField, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<XPoly<D>, E> {
        Ok(XPoly::new(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a XPoly<C>>) -> XPoly<C>
    where
        C: 'a,
    {
        factors.into_iter().fold(XPoly::one(), |acc, f| &acc * f)
    }
}

impl<C: ExactField> Add for &XPoly<C> {
    type Output = XPoly<C>;
    fn add(self, rhs: &XPoly<C>) -> XPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }
}

impl<C: ExactField> Sub for &XPoly<C> {
    type Output = XPoly<C>;
    fn sub(self, rhs: &XPoly<C>) -> XPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|k| self.coeff(k).sub(&rhs.coeff(k))).collect())
    }
}

impl<C: ExactField> Neg for &XPoly<C> {
    type Output = XPoly<C>;
    fn neg(self) -> XPoly<C> {
        XPoly::new(self.coeffs.iter().map(C::neg).collect())
    }
}

impl<C: ExactField> Mul for &XPoly<C> {
    type Output = XPoly<C>;
    fn mul(self, rhs: &XPoly<C>) -> XPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        XPoly::new(out)
    }
}

impl<C: ExactField> fmt::Display for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<C: ExactField> fmt::Debug for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl XPoly<Rational> {
    pub fn from_ints(c: &[i64]) -> Self {
        XPoly::new(c.iter().map(|&v| Rational::from_integer(v)).collect())
    }
}
