//! Truncated formal power series with exact coefficients, the Jackson
//! q-exponentials and q-trigonometric series, and a certified evaluator for
//! `sin_q` at rational points when `q > 1`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{ExactField, QRatFunc, Rational};
use crate::error::{Error, Result};
use crate::qcore::{jackson_derivative, q_factorial_at, XPoly};
use crate::report::{params, VerifyReport};

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_ORDER: usize = 32;

/// `a_0 + a_1 z + ... + a_{N-1} z^{N-1} + O(z^N)`; always exactly `N` stored
/// coefficients.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: ExactField + Deserialize<'de>"))]
#[serde(transparent)]
pub struct TruncSeries<C: ExactField> {
    coeffs: Vec<C>,
}

impl<C: ExactField> TruncSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncSeries { coeffs: (0..order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::from_fn(order, |_| C::zero())
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().take(order).cloned().collect() }
    }

    pub fn map<D: ExactField>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: ExactField>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TruncSeries<D>> {
        Ok(TruncSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    /// Substitute `z -> s z`.
    pub fn rescale(&self, s: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.order());
        for c in &self.coeffs {
            out.push(c.mul(&pw));
            pw = pw.mul(s);
        }
        TruncSeries { coeffs: out }
    }

    /// Multiply every coefficient by `s`.
    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    /// Exact division by `z`; the order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(self.clone()),
            Some(c) if !c.is_zero() => Err(Error::NonzeroConstantTerm),
            Some(_) => Ok(TruncSeries { coeffs: self.coeffs[1..].to_vec() }),
        }
    }

    /// `1/a` modulo `z^N`, by the recurrence
    /// `b_0 = 1/a_0`, `b_k = -(a_1 b_{k-1} + ... + a_k b_0) / a_0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs.first().ok_or(Error::NonUnit)?;
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.inv()?;
        let mut b: Vec<C> = Vec::with_capacity(self.order());
        b.push(inv0.clone());
        for k in 1..self.order() {
            let mut acc = C::zero();
            for j in 1..=k {
                let aj = &self.coeffs[j];
                if !aj.is_zero() && !b[k - j].is_zero() {
                    acc = acc.add(&aj.mul(&b[k - j]));
                }
            }
            b.push(acc.mul(&inv0).neg());
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// True when this is `1 + O(z^N)`.
    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| if k == 0 { *c == C::one() } else { c.is_zero() })
    }
}

impl<C: ExactField> Add for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn add(self, rhs: &TruncSeries<C>) -> TruncSeries<C> {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |k| self.coeffs[k].add(&rhs.coeffs[k]))
    }
}

impl<C: ExactField> Sub for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn sub(self, rhs: &TruncSeries<C>) -> TruncSeries<C> {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |k| self.coeffs[k].sub(&rhs.coeffs[k]))
    }
}

impl<C: ExactField> Neg for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn neg(self) -> TruncSeries<C> {
        self.map(C::neg)
    }
}

/// Cauchy product truncated to the smaller order.
impl<C: ExactField> Mul for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn mul(self, rhs: &TruncSeries<C>) -> TruncSeries<C> {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |k| {
            let mut acc = C::zero();
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }
}

/// A series whose coefficient domain is only known at run time.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(untagged)]
pub enum AnySeries {
    Rational(TruncSeries<Rational>),
    Symbolic(TruncSeries<QRatFunc>),
}

/// Which of the two series arithmetic operations to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

/// Series arithmetic across dynamically typed operands.
pub fn series_arith(a: &AnySeries, b: &AnySeries, op: SeriesOp) -> Result<AnySeries> {
    fn apply<C: ExactField>(a: &TruncSeries<C>, b: &TruncSeries<C>, op: SeriesOp) -> TruncSeries<C> {
        match op {
            SeriesOp::Add => a + b,
            SeriesOp::Sub => a - b,
            SeriesOp::Mul => a * b,
        }
    }
    match (a, b) {
        (AnySeries::Rational(a), AnySeries::Rational(b)) => Ok(AnySeries::Rational(apply(a, b, op))),
        (AnySeries::Symbolic(a), AnySeries::Symbolic(b)) => Ok(AnySeries::Symbolic(apply(a, b, op))),
        _ => Err(Error::DomainMismatch),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QExpKind {
    /// `e_q(z) = sum z^k / [k]!`
    Small,
    /// `E_q(z) = sum q^(k(k-1)/2) z^k / [k]!`
    Big,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QTrigKind {
    Sin,
    Cos,
}

/// Jackson q-exponential of `s z` in the coefficient field, for a given `q`.
pub fn eq_series_in<C: ExactField>(order: usize, s: &Rational, kind: QExpKind, q: &C) -> TruncSeries<C> {
    let mut fact = C::one();
    let mut s_pow = Rational::one();
    let mut q_pow = C::one(); // q^(k(k-1)/2)
    let mut q_k = C::one(); // q^k
    let mut out = Vec::with_capacity(order);
    for k in 0..order {
        if k > 0 {
            fact = fact.mul(&crate::qcore::q_int_at(k, q));
        }
        let base = if s_pow.is_zero() {
            C::zero()
        } else {
            fact.inv().expect("[k]! is nonzero at admissible q").scale(&s_pow)
        };
        out.push(match kind {
            QExpKind::Small => base,
            QExpKind::Big => base.mul(&q_pow),
        });
        s_pow = &s_pow * s;
        q_pow = q_pow.mul(&q_k);
        q_k = q_k.mul(q);
    }
    TruncSeries { coeffs: out }
}

/// `e_q(s z)` or `E_q(s z)` with coefficients symbolic in `q`.
pub fn eq_series(order: usize, sign_scale: &Rational, kind: QExpKind) -> TruncSeries<QRatFunc> {
    eq_series_in(order, sign_scale, kind, &QRatFunc::q())
}

/// `sin_q t` or `cos_q t` in the coefficient field, built directly from the
/// parity and sign pattern: `(-1)^k / [2k+1]!` on odd powers for sine,
/// `(-1)^k / [2k]!` on even powers for cosine.
pub fn qtrig_series_in<C: ExactField>(order: usize, kind: QTrigKind, q: &C) -> TruncSeries<C> {
    let parity = match kind {
        QTrigKind::Sin => 1,
        QTrigKind::Cos => 0,
    };
    TruncSeries::from_fn(order, |n| {
        if n % 2 != parity {
            return C::zero();
        }
        let v = q_factorial_at(n, q).inv().expect("[n]! is nonzero at admissible q");
        if (n / 2) % 2 == 1 {
            v.neg()
        } else {
            v
        }
    })
}

pub fn qtrig_series(order: usize, kind: QTrigKind) -> TruncSeries<QRatFunc> {
    qtrig_series_in(order, kind, &QRatFunc::q())
}

/// A partial sum together with a proven bound on the truncation error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTailBound {
    pub partial_sum: Rational,
    pub bound: Rational,
    pub terms_used: usize,
}

impl SeriesTailBound {
    /// `Some(sign)` when `|partial_sum| > bound`, so the sign of the true value is proven.
    pub fn certified_sign(&self) -> Option<i32> {
        (self.partial_sum.abs() > self.bound).then(|| self.partial_sum.signum())
    }
}

/// Incremental evaluator for the alternating sin_q series at a fixed point.
struct SinqTerms {
    x2: Rational,
    q: Rational,
    /// `[2k+1]_q` for the current `k`.
    qint_odd: Rational,
    term: Rational,
    k: usize,
}

impl SinqTerms {
    fn new(x: &Rational, q: &Rational) -> Self {
        SinqTerms { x2: x * x, q: q.clone(), qint_odd: Rational::one(), term: x.clone(), k: 0 }
    }

    /// `[2k+2]`, `[2k+3]` for the current `k`.
    fn next_ints(&self) -> (Rational, Rational) {
        let a = &Rational::one() + &(&self.q * &self.qint_odd);
        let b = &Rational::one() + &(&self.q * &a);
        (a, b)
    }

    /// Ratio `|t_{k+1} / t_k| = x^2 / ([2k+2][2k+3])`.
    fn ratio(&self) -> Rational {
        let (a, b) = self.next_ints();
        &self.x2 / &(&a * &b)
    }

    fn advance(&mut self) {
        let (a, b) = self.next_ints();
        self.term = -(&self.term * &self.x2) / (&a * &b);
        self.qint_odd = b;
        self.k += 1;
    }
}

fn require_q_above_one(q0: &Rational) -> Result<()> {
    if *q0 <= 1 {
        return Err(Error::QNotAboveOne(q0.to_string()));
    }
    Ok(())
}

/// `sin_q(x)` with a rigorous error bound, `q0 > 1`.
///
/// Sums terms `k = 0..=K` where `K` is the first index whose next-term ratio
/// `x^2 / ([2K+2][2K+3])` is at most 1/2. The ratios keep shrinking after
/// that, so twice the first omitted term bounds the tail.
pub fn certified_sinq_eval(x: &Rational, q0: &Rational) -> Result<SeriesTailBound> {
    require_q_above_one(q0)?;
    let half = Rational::frac(1, 2);
    let mut it = SinqTerms::new(x, q0);
    let mut partial = Rational::zero();
    loop {
        partial += &it.term;
        if it.ratio() <= half {
            break;
        }
        it.advance();
    }
    let terms_used = it.k + 1;
    it.advance();
    Ok(SeriesTailBound { bound: it.term.abs() * Rational::from(2), partial_sum: partial, terms_used })
}

/// As [`certified_sinq_eval`] but summing exactly `terms` terms. Fails when
/// the ratio condition does not yet hold at that truncation.
pub fn certified_sinq_eval_terms(x: &Rational, q0: &Rational, terms: usize) -> Result<SeriesTailBound> {
    require_q_above_one(q0)?;
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    let mut it = SinqTerms::new(x, q0);
    let mut partial = Rational::zero();
    for _ in 1..terms {
        partial += &it.term;
        it.advance();
    }
    partial += &it.term;
    if it.ratio() > Rational::frac(1, 2) {
        return Err(Error::InvalidArgument(format!(
            "{terms} terms do not reach the ratio threshold at x = {x}"
        )));
    }
    it.advance();
    Ok(SeriesTailBound { bound: it.term.abs() * Rational::from(2), partial_sum: partial, terms_used: terms })
}

/// Integer-only state for the sin_q partial sums at `x = u/v`, `q = a/b`.
///
/// With `A_m = a^m - b^m` we have `[m] = A_m / ((a - b) b^(m-1))`, so the
/// term ratio is `-r_k / m_k` for integers
/// `r_k = u^2 (a - b)^2 b^(4k+3)` and `m_k = v^2 A_(2k+2) A_(2k+3)`.
/// Everything stays over one growing denominator `den`; no gcds are taken.
struct SinqIntTerms {
    u2: BigInt,
    v2: BigInt,
    a: BigInt,
    b: BigInt,
    amb2: BigInt,
    /// `a^(2k+1)`, `b^(2k+1)` for the current `k`.
    a_pow: BigInt,
    b_pow: BigInt,
    /// `b^(4k+3)`.
    b_ratio_pow: BigInt,
    b4: BigInt,
    /// Current term and partial sum numerators over `den`.
    term: BigInt,
    partial: BigInt,
    den: BigInt,
    k: usize,
}

impl SinqIntTerms {
    fn new(x: &Rational, q: &Rational) -> Self {
        let (u, v) = (x.numer().clone(), x.denom().clone());
        let (a, b) = (q.numer().clone(), q.denom().clone());
        let amb = &a - &b;
        let b2 = &b * &b;
        SinqIntTerms {
            u2: &u * &u,
            v2: &v * &v,
            amb2: &amb * &amb,
            a_pow: a.clone(),
            b_pow: b.clone(),
            b_ratio_pow: &b2 * &b,
            b4: &b2 * &b2,
            term: u.clone(),
            partial: u,
            den: v,
            a,
            b,
            k: 0,
        }
    }

    /// `(r_k, m_k)`.
    fn step_factors(&self) -> (BigInt, BigInt) {
        let a2 = &self.a_pow * &self.a;
        let b2 = &self.b_pow * &self.b;
        let a3 = &a2 * &self.a;
        let b3 = &b2 * &self.b;
        let r = &self.u2 * &self.amb2 * &self.b_ratio_pow;
        let m = &self.v2 * (a2 - b2) * (a3 - b3);
        (r, m)
    }

    /// Moves to `k + 1`, adding the new term to the partial sum unless `add` is false.
    fn advance(&mut self, r: &BigInt, m: &BigInt, add: bool) {
        self.term = -(&self.term * r);
        self.den *= m;
        if add {
            self.partial = &self.partial * m + &self.term;
        } else {
            self.partial *= m;
        }
        self.a_pow = &self.a_pow * &self.a * &self.a;
        self.b_pow = &self.b_pow * &self.b * &self.b;
        self.b_ratio_pow *= &self.b4;
        self.k += 1;
    }
}

/// Sign of `sin_q(x)` together with the certifying partial sum and bound.
/// Terms are added past the minimal truncation until the partial sum clears
/// its error bound.
pub fn certified_sinq_sign(x: &Rational, q0: &Rational, max_terms: usize) -> Result<(i32, SeriesTailBound)> {
    let (sign, it) = sinq_sign_state(x, q0, max_terms)?;
    // `it` sits one step past the last summed term: its partial excludes that term.
    let partial_sum = Rational::new(it.partial, it.den.clone())?;
    let bound = Rational::new(it.term.abs() * 2, it.den)?;
    Ok((sign, SeriesTailBound { partial_sum, bound, terms_used: it.k }))
}

/// As [`certified_sinq_sign`] without building the rational witnesses.
pub fn certified_sinq_sign_only(x: &Rational, q0: &Rational, max_terms: usize) -> Result<i32> {
    sinq_sign_state(x, q0, max_terms).map(|(s, _)| s)
}

fn sinq_sign_state(x: &Rational, q0: &Rational, max_terms: usize) -> Result<(i32, SinqIntTerms)> {
    require_q_above_one(q0)?;
    if x.is_zero() {
        return Err(Error::CertificationFailure { x: x.to_string(), terms: 0 });
    }
    let mut it = SinqIntTerms::new(x, q0);
    loop {
        let terms_used = it.k + 1;
        let (r, m) = it.step_factors();
        let ready = BigInt::from(2) * &r <= m;
        if ready {
            // Peek at the next term without adding it: |partial * m| > 2 |term * r|.
            let scaled_partial = &it.partial * &m;
            let next_term = &it.term * &r;
            if scaled_partial.magnitude() > &(next_term.magnitude() * 2u32) {
                let sign = if scaled_partial.is_negative() { -1 } else { 1 };
                it.advance(&r, &m, false);
                return Ok((sign, it));
            }
        }
        if terms_used >= max_terms {
            return Err(Error::CertificationFailure { x: x.to_string(), terms: max_terms });
        }
        it.advance(&r, &m, true);
    }
}

/// `e_q(z) E_q(-z) = 1 + O(z^N)`, symbolically in `q`.
pub fn check_inverse_identity(order: usize) -> VerifyReport {
    let e = eq_series(order, &Rational::one(), QExpKind::Small);
    let big = eq_series(order, &Rational::from(-1), QExpKind::Big);
    let prod = &e * &big;
    let failures = prod
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(k, c)| if *k == 0 { !c.is_one() } else { !c.is_zero() })
        .map(|(k, c)| format!("coefficient of z^{k} is {c}"))
        .collect();
    VerifyReport::exact("euler-inverse", params([("order", order.to_string())]), order, failures)
}

/// Apply `D_q` in `z` to a series, treating it as a polynomial of degree `< N`.
pub fn jackson_derivative_series(s: &TruncSeries<QRatFunc>) -> TruncSeries<QRatFunc> {
    let p = XPoly::new(s.coeffs().to_vec());
    let d = jackson_derivative(&p, &QRatFunc::q());
    TruncSeries::from_fn(s.order().saturating_sub(1), |k| d.coeff(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QPoly;
    use crate::qcore::{q_factorial, q_int};
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn rs(v: &[(i64, i64)]) -> TruncSeries<Rational> {
        TruncSeries::new(v.iter().map(|&(n, d)| Rational::frac(n, d)).collect())
    }

    fn inv_qfact(n: usize) -> QRatFunc {
        QRatFunc::new(&QPoly::one(), &q_factorial(n)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = rs(&[(1, 1), (1, 1), (0, 1)]);
        let b = rs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(&a * &b, rs(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(&a + &TruncSeries::zero(3), a);
    }

    #[test]
    fn result_order_is_minimum() {
        let a = TruncSeries::<Rational>::one(5);
        let b = TruncSeries::<Rational>::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn domain_mismatch() {
        let a = AnySeries::Rational(TruncSeries::one(3));
        let b = AnySeries::Symbolic(TruncSeries::one(3));
        assert_eq!(series_arith(&a, &b, SeriesOp::Add), Err(Error::DomainMismatch));
        assert!(series_arith(&a, &a, SeriesOp::Mul).is_ok());
    }

    #[test]
    fn geometric_reciprocal() {
        let mut c = vec![r(1), r(1)];
        c.resize(6, r(0));
        let inv = TruncSeries::new(c).reciprocal().unwrap();
        assert_eq!(inv, rs(&[(1, 1), (-1, 1), (1, 1), (-1, 1), (1, 1), (-1, 1)]));
        let k = TruncSeries::constant(Rational::frac(2, 7), 4).reciprocal().unwrap();
        assert_eq!(k, TruncSeries::constant(Rational::frac(7, 2), 4));
        assert_eq!(TruncSeries::<Rational>::zero(3).reciprocal(), Err(Error::NonUnit));
    }

    #[test]
    fn q_exponential_coefficients() {
        let e = eq_series(3, &Rational::one(), QExpKind::Small);
        assert_eq!(e.coeffs(), &[QRatFunc::one(), QRatFunc::one(), inv_qfact(2)]);
        let big = eq_series(3, &Rational::one(), QExpKind::Big);
        assert_eq!(big.coeff(2), &(&QRatFunc::q() * &inv_qfact(2)));
        let zero_arg = eq_series(6, &Rational::zero(), QExpKind::Small);
        assert!(zero_arg.is_one());
    }

    #[test]
    fn q_sine_and_cosine() {
        let s = qtrig_series(4, QTrigKind::Sin);
        assert_eq!(s.coeffs(), &[QRatFunc::zero(), QRatFunc::one(), QRatFunc::zero(), -inv_qfact(3)]);
        assert!(qtrig_series(1, QTrigKind::Cos).is_one());
        let classical = qtrig_series_in(6, QTrigKind::Sin, &Rational::one());
        assert_eq!(classical, rs(&[(0, 1), (1, 1), (0, 1), (-1, 6), (0, 1), (1, 120)]));
    }

    #[test]
    fn euler_split_of_e_q() {
        // e_q(it): coefficient i^n/[n]!. Real part is cos_q, imaginary part sin_q.
        let n = 12;
        let e = eq_series(n, &Rational::one(), QExpKind::Small);
        let s = qtrig_series(n, QTrigKind::Sin);
        let c = qtrig_series(n, QTrigKind::Cos);
        for k in 0..n {
            let sign = if (k / 2) % 2 == 1 { -1 } else { 1 };
            let expect = e.coeff(k).scale(&r(sign));
            if k % 2 == 0 {
                assert_eq!(c.coeff(k), &expect);
                assert!(s.coeff(k).is_zero());
            } else {
                assert_eq!(s.coeff(k), &expect);
                assert!(c.coeff(k).is_zero());
            }
        }
    }

    #[test]
    fn inverse_identity_small_order() {
        let rep = check_inverse_identity(10);
        assert!(rep.pass, "{:?}", rep.failures);
    }

    #[test]
    fn q_exponential_is_a_jackson_eigenfunction() {
        let e = eq_series(10, &Rational::one(), QExpKind::Small);
        assert_eq!(jackson_derivative_series(&e), e.truncate(9));
    }

    #[test]
    fn q_one_gives_classical_coefficients() {
        let e = eq_series(8, &Rational::one(), QExpKind::Big);
        let at_one = e.try_map(|c| c.eval(&Rational::one())).unwrap();
        let mut fact = 1i64;
        for k in 0..8 {
            if k > 0 {
                fact *= k as i64;
            }
            assert_eq!(at_one.coeff(k), &Rational::frac(1, fact));
        }
    }

    #[test]
    fn numeric_and_symbolic_exponentials_agree() {
        let q0 = Rational::frac(3, 2);
        let sym = eq_series(9, &Rational::frac(-1, 2), QExpKind::Big).try_map(|c| c.eval(&q0)).unwrap();
        let num = eq_series_in(9, &Rational::frac(-1, 2), QExpKind::Big, &q0);
        assert_eq!(sym, num);
    }

    #[test]
    fn certified_eval_at_origin() {
        let t = certified_sinq_eval(&r(0), &r(2)).unwrap();
        assert_eq!(t, SeriesTailBound { partial_sum: r(0), bound: r(0), terms_used: 1 });
    }

    #[test]
    fn certified_eval_three_terms() {
        // [3]_2! = 1*3*7 = 21, [5]_2! = 21*15*31 = 9765, [7]_2! = 9765*63*127
        let t = certified_sinq_eval_terms(&r(1), &r(2), 3).unwrap();
        let expect = r(1) - Rational::frac(1, 21) + Rational::frac(1, 9765);
        assert_eq!(t.partial_sum, expect);
        assert_eq!(t.bound, Rational::new(2, 9765 * 63 * 127).unwrap());
        assert_eq!(q_factorial(5).eval(&r(2)), r(9765));
        let min = certified_sinq_eval(&r(1), &r(2)).unwrap();
        assert_eq!(min.terms_used, 1);
        assert!(t.bound < min.bound);
    }

    #[test]
    fn bound_encloses_a_high_order_reference() {
        let q = Rational::frac(3, 2);
        let x = Rational::frac(37, 5);
        let t = certified_sinq_eval(&x, &q).unwrap();
        let reference = certified_sinq_eval_terms(&x, &q, t.terms_used + 30).unwrap();
        assert!((&t.partial_sum - &reference.partial_sum).abs() <= t.bound);
        assert!((&t.partial_sum - &reference.partial_sum).abs() <= &t.bound - &reference.bound);
    }

    #[test]
    fn q_at_or_below_one_rejected() {
        for q in [r(1), Rational::frac(1, 2), r(-3)] {
            assert!(matches!(certified_sinq_eval(&r(1), &q), Err(Error::QNotAboveOne(_))));
        }
        assert!(certified_sinq_eval_terms(&r(50), &r(2), 1).is_err());
    }

    #[test]
    fn sign_flips_across_first_zero() {
        // First zero of sin_2 lies near 4.6949.
        let q = r(2);
        let below = certified_sinq_sign(&Rational::frac(469, 100), &q, 500).unwrap().0;
        let above = certified_sinq_sign(&Rational::frac(470, 100), &q, 500).unwrap().0;
        assert_eq!(below, 1);
        assert_eq!(above, -1);
    }

    /// Straightforward rational version of the sign search, as an oracle.
    fn reference_sign(x: &Rational, q: &Rational, max_terms: usize) -> Option<(i32, SeriesTailBound)> {
        let half = Rational::frac(1, 2);
        let mut it = SinqTerms::new(x, q);
        let mut partial = Rational::zero();
        loop {
            partial += &it.term;
            let ready = it.ratio() <= half;
            let terms_used = it.k + 1;
            it.advance();
            if ready {
                let bound = it.term.abs() * Rational::from(2);
                if partial.abs() > bound {
                    return Some((partial.signum(), SeriesTailBound { partial_sum: partial, bound, terms_used }));
                }
            }
            if terms_used >= max_terms {
                return None;
            }
        }
    }

    #[test]
    fn zero_argument_has_no_certified_sign() {
        assert!(certified_sinq_sign(&r(0), &r(2), 50).is_err());
        assert!(certified_sinq_sign(&r(1), &r(1), 50).is_err());
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reciprocal_times_self_is_one(rest in prop::collection::vec(rat(), 1..8), a0 in rat()) {
            prop_assume!(!a0.is_zero());
            let mut c = vec![a0];
            c.extend(rest);
            let a = TruncSeries::new(c);
            prop_assert!((&a * &a.reciprocal().unwrap()).is_one());
        }

        #[test]
        fn tail_bound_shrinks_with_more_terms(xn in 0i64..400, xd in 1i64..8, qn in 11i64..40) {
            let x = Rational::frac(xn, xd);
            let q = Rational::frac(qn, 10);
            let base = certified_sinq_eval(&x, &q).unwrap();
            prop_assert!(base.bound >= Rational::zero());
            let mut prev = base.bound.clone();
            for extra in 1..4 {
                let t = certified_sinq_eval_terms(&x, &q, base.terms_used + extra).unwrap();
                prop_assert!(t.bound <= prev);
                prop_assert!((&t.partial_sum - &base.partial_sum).abs() <= base.bound.clone());
                prev = t.bound;
            }
        }

        #[test]
        fn integer_sign_matches_rational_oracle(xn in 1i64..5000, xd in 1i64..64, qn in 11i64..40, qd in 1i64..10) {
            let q = Rational::frac(qn, qd);
            prop_assume!(q > Rational::one());
            let x = Rational::frac(xn, xd);
            let fast = certified_sinq_sign(&x, &q, 400).ok();
            prop_assert_eq!(fast, reference_sign(&x, &q, 400));
        }

        #[test]
        fn integers_are_regular_at_one(n in 0usize..20) {
            prop_assert_eq!(QRatFunc::from_qpoly(&q_int(n)).eval(&Rational::one()).unwrap(), Rational::from(n as i64));
        }
    }
}
