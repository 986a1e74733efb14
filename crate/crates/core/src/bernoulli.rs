//! Classical and q-Bernoulli numbers and polynomials, obtained from their
//! generating functions by exact series reciprocal, plus the identity checks
//! that go with them.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{ExactField, QRatFunc, Rational};
use crate::error::{Error, Result};
use crate::powerseries::{eq_series_in, QExpKind, TruncSeries};
use crate::qcore::{jackson_derivative, q_factorial_at, q_int_at, XPoly};
use crate::report::{params, VerifyReport};

pub const DEFAULT_MAX_N: usize = 10;

fn factorial(n: usize) -> Rational {
    Rational::from_big((1..=n).map(BigInt::from).product::<BigInt>().into())
}

/// Classical `b_0..=b_max_n`: `n!` times the coefficients of the reciprocal
/// of `(e^z - 1)/z`.
pub fn classical_bernoulli(max_n: usize) -> Vec<Rational> {
    let order = max_n + 1;
    // (e^z - 1)/z has coefficient 1/(k+1)! at z^k.
    let denom = TruncSeries::from_fn(order, |k| factorial(k + 1).recip().expect("nonzero"));
    let recip = denom.reciprocal().expect("constant term is 1");
    (0..order).map(|n| recip.coeff(n) * &factorial(n)).collect()
}

/// `E_q(z/2) (e_q(z/2) - e_q(-z/2)) / z` to order `order`, for a given `q`.
pub fn q_bernoulli_denominator<C: ExactField>(order: usize, q: &C) -> TruncSeries<C> {
    let half = Rational::frac(1, 2);
    let big = eq_series_in(order, &half, QExpKind::Big, q);
    let plus = eq_series_in(order + 1, &half, QExpKind::Small, q);
    let minus = eq_series_in(order + 1, &-&half, QExpKind::Small, q);
    let odd = (&plus - &minus).div_z().expect("odd part has no constant term");
    &big * &odd
}

/// `b_0..=b_max_n` in the field of `q`.
pub fn q_bernoulli_numbers_in<C: ExactField>(max_n: usize, q: &C) -> Vec<C> {
    let order = max_n + 1;
    let recip = q_bernoulli_denominator(order, q).reciprocal().expect("constant term is 1");
    let mut fact = C::one();
    (0..order)
        .map(|n| {
            if n > 0 {
                fact = fact.mul(&q_int_at(n, q));
            }
            recip.coeff(n).mul(&fact)
        })
        .collect()
}

/// Symbolic q-Bernoulli numbers `b_0^q..=b_max_n^q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QBernoulliTable {
    pub entries: Vec<QRatFunc>,
    pub max_n: usize,
}

pub fn q_bernoulli_numbers(max_n: usize) -> QBernoulliTable {
    QBernoulliTable { entries: q_bernoulli_numbers_in(max_n, &QRatFunc::q()), max_n }
}

impl QBernoulliTable {
    pub fn get(&self, n: usize) -> Option<&QRatFunc> {
        self.entries.get(n)
    }

    pub fn at(&self, q0: &Rational) -> Result<Vec<Rational>> {
        self.entries.iter().map(|e| e.eval(q0)).collect()
    }

    /// `[{n, value, value_at_q?}, ...]`.
    pub fn to_json(&self, q0: Option<&Rational>) -> Result<Value> {
        let values = q0.map(|q| self.at(q)).transpose()?;
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(n, e)| {
                let mut row = json!({ "n": n, "value": e });
                if let Some(v) = &values {
                    row["value_at_q"] = json!(v[n]);
                }
                row
            })
            .collect();
        Ok(Value::Array(rows))
    }

    /// Columns `n,num,den`. Symbolic cells list polynomial coefficients in
    /// increasing powers of q separated by `;`; with `q0` the cells hold the
    /// numerator and denominator of the evaluated number.
    pub fn to_csv(&self, q0: Option<&Rational>) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(["n", "num", "den"]).map_err(csv_err)?;
        for (n, e) in self.entries.iter().enumerate() {
            let (num, den) = match q0 {
                Some(q) => {
                    let v = e.eval(q)?;
                    (v.numer().to_string(), v.denom().to_string())
                }
                None => (join_coeffs(e.num().coeffs()), join_coeffs(e.den().coeffs())),
            };
            w.write_record([n.to_string(), num, den]).map_err(csv_err)?;
        }
        finish_csv(w)
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv: {e}"))
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn join_coeffs(c: &[Rational]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(Rational::to_string).collect::<Vec<_>>().join(";")
}

/// `B_n^q(x)`, stored as coefficients of powers of `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QBernoulliPolynomial {
    pub n: usize,
    pub coeffs_in_x: XPoly<QRatFunc>,
}

/// `B_0^q..=B_max_n^q` from the series product `F_0(z) e_q(xz)`: the `z^n`
/// coefficient is `sum_k (b_k/[k]!) x^(n-k)/[n-k]!`, scaled by `[n]!`.
pub fn q_bernoulli_polynomials(max_n: usize) -> Vec<QBernoulliPolynomial> {
    let q = QRatFunc::q();
    let table = q_bernoulli_numbers(max_n);
    let inv_fact: Vec<QRatFunc> =
        (0..=max_n).map(|k| q_factorial_at(k, &q).inv().expect("[k]! is nonzero")).collect();
    (0..=max_n)
        .map(|n| {
            let fact_n = q_factorial_at(n, &q);
            let mut coeffs = vec![QRatFunc::zero(); n + 1];
            for k in 0..=n {
                let b = &table.entries[k];
                if b.is_zero() {
                    continue;
                }
                coeffs[n - k] = &(&(b * &inv_fact[k]) * &inv_fact[n - k]) * &fact_n;
            }
            QBernoulliPolynomial { n, coeffs_in_x: XPoly::new(coeffs) }
        })
        .collect()
}

/// `D_q B_n^q = [n] B_{n-1}^q` for every consecutive pair in the list.
pub fn check_q_recursion(polys: &[QBernoulliPolynomial]) -> VerifyReport {
    let q = QRatFunc::q();
    let mut failures = Vec::new();
    for w in polys.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let lhs = jackson_derivative(&cur.coeffs_in_x, &q);
        let rhs = prev.coeffs_in_x.scale(&q_int_at(cur.n, &q));
        if lhs != rhs {
            failures.push(format!("n={}: D_q B_n = {lhs}, [n] B_(n-1) = {rhs}", cur.n));
        }
    }
    let max_n = polys.last().map_or(0, |p| p.n);
    VerifyReport::exact("recursion", params([("max_n", max_n.to_string())]), polys.len().saturating_sub(1), failures)
}

/// `b_(2k+1)^q = 0` for every odd index `3 <= 2k+1 <= max_n`.
pub fn check_odd_vanishing(table: &QBernoulliTable) -> VerifyReport {
    let odd: Vec<usize> = (3..=table.max_n).step_by(2).collect();
    let failures = odd
        .iter()
        .filter(|&&n| !table.entries[n].is_zero())
        .map(|&n| format!("b_{n} = {}", table.entries[n]))
        .collect();
    VerifyReport::exact("odd-vanish", params([("max_n", table.max_n.to_string())]), odd.len(), failures)
}

/// Classical `B_n(x) = sum_k C(n,k) b_k x^(n-k)`.
pub fn classical_bernoulli_polynomials(max_n: usize) -> Vec<XPoly<Rational>> {
    let b = classical_bernoulli(max_n);
    (0..=max_n)
        .map(|n| {
            let mut c = vec![Rational::zero(); n + 1];
            let mut binom = Rational::one();
            for k in 0..=n {
                c[n - k] = &binom * &b[k];
                binom = binom * Rational::from((n - k) as i64) / Rational::from((k + 1) as i64);
            }
            XPoly::new(c)
        })
        .collect()
}

/// `B_n(x+1) - B_n(x) = n x^(n-1)` for `1 <= n <= max_n`.
pub fn classical_shift_identity(max_n: usize) -> VerifyReport {
    let polys = classical_bernoulli_polynomials(max_n);
    let one = Rational::one();
    let failures = polys
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(n, p)| {
            let diff = &p.shift(&one) - p;
            let expect = XPoly::monomial(Rational::from(n as i64), n - 1);
            (diff != expect).then(|| format!("n={n}: difference is {diff}"))
        })
        .collect();
    VerifyReport::exact("shift", params([("max_n", max_n.to_string())]), max_n, failures)
}

/// `zeta(2k) / pi^(2k) = (-1)^(k-1) b_(2k) 2^(2k-1) / (2k)!`.
pub fn zeta_even_rational(k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let b = &classical_bernoulli(2 * k)[2 * k];
    let sign = if k % 2 == 1 { Rational::one() } else { Rational::from(-1) };
    Ok(sign * b * Rational::from(2).powu(2 * k as u32 - 1) / factorial(2 * k))
}
