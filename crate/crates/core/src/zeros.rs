//! Certified positive zeros of `sin_q` for `q > 1`, power sums over them, and
//! the identities tying those sums to the q-Bernoulli numbers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{ExactField, QRatFunc, Rational};
use crate::bernoulli::{classical_bernoulli, csv_err, finish_csv, q_bernoulli_numbers, zeta_even_rational};
use crate::error::{Error, Result};
use crate::powerseries::certified_sinq_sign_only;
use crate::qcore::{q_factorial_at, q_int_at};
use crate::report::{params, VerifyReport};

pub const DEFAULT_COUNT: usize = 20;

/// Cap on series terms when proving a sign at one point.
pub const MAX_TERMS: usize = 4096;

/// Cap on scan steps before giving up.
const MAX_SCAN_STEPS: usize = 200_000;

/// Significant bits kept when snapping scan points.
const SCAN_BITS: u64 = 20;

pub fn default_tol() -> Rational {
    Rational::frac(1, 1_000_000_000_000)
}

/// A bracket `[lo, hi]` around the `n`-th positive zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub n: usize,
    pub lo: Rational,
    pub hi: Rational,
    /// Both endpoint signs were proven with opposite values.
    pub certified: bool,
}

impl ZeroRecord {
    pub fn mid(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn check_q(q0: &Rational) -> Result<()> {
    if *q0 <= 1 {
        return Err(Error::QNotAboveOne(q0.to_string()));
    }
    Ok(())
}

fn sign_at(x: &Rational, q0: &Rational) -> Result<i32> {
    certified_sinq_sign_only(x, q0, MAX_TERMS)
}

/// Proven sign somewhere inside `(lo, hi)`, trying the midpoint first and
/// then two off-centre points.
fn probe(lo: &Rational, hi: &Rational, q0: &Rational) -> Result<(Rational, i32)> {
    let w = hi - lo;
    let mut last = None;
    for frac in [Rational::frac(1, 2), Rational::frac(3, 8), Rational::frac(5, 8)] {
        let x = lo + &(&w * &frac);
        match sign_at(&x, q0) {
            Ok(s) => return Ok((x, s)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one probe"))
}

/// Scan forward from `x = 1` until `count` sign changes have been seen.
///
/// The scan step is `x (q^2 - 1)/4 + 1/4`, a quarter of the asymptotic gap
/// `x_(n+1) - x_n ~ x_n (q^2 - 1)` plus a floor that covers the `q -> 1`
/// spacing near `pi`. Each point is snapped down to a short dyadic so the
/// exact arithmetic stays small.
fn scan_brackets(q0: &Rational, count: usize) -> Result<Vec<(Rational, Rational, i32)>> {
    let quarter = Rational::frac(1, 4);
    let growth = (q0 * q0 - Rational::one()) * &quarter;
    let mut x = Rational::one();
    let mut sign = sign_at(&x, q0)?;
    let mut out = Vec::with_capacity(count);
    let mut steps = 0;
    while out.len() < count {
        steps += 1;
        if steps > MAX_SCAN_STEPS {
            return Err(Error::ScanLimit { found: out.len(), wanted: count });
        }
        let step = (&(&x * &growth) + &quarter).snap_dyadic(SCAN_BITS);
        let next = &x + &step;
        let s = sign_at(&next, q0)?;
        if s != sign {
            out.push((x.clone(), next.clone(), sign));
            sign = s;
        }
        x = next;
    }
    Ok(out)
}

fn bisect(n: usize, mut lo: Rational, mut hi: Rational, sign_lo: i32, q0: &Rational, tol: &Rational) -> Result<ZeroRecord> {
    while &hi - &lo > *tol {
        let (x, s) = probe(&lo, &hi, q0)?;
        if s == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
    }
    Ok(ZeroRecord { n, lo, hi, certified: true })
}

/// The first `count` positive zeros of `sin_q` at `q0 > 1`, each bracketed to
/// width at most `tol` with both endpoint signs proven.
pub fn find_zeros(q0: &Rational, count: usize, tol: &Rational) -> Result<Vec<ZeroRecord>> {
    check_q(q0)?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let brackets = scan_brackets(q0, count)?;
    brackets
        .into_par_iter()
        .enumerate()
        .map(|(i, (lo, hi, s))| bisect(i + 1, lo, hi, s, q0, tol))
        .collect()
}

/// `sum 1/x_n^(2k)` over computed zeros with its error split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSumResult {
    pub exponent: u32,
    pub partial: Rational,
    pub enclosure_error: Rational,
    pub tail_estimate: Rational,
    pub total_error: Rational,
}

/// Power sum of even exponent `exponent` over the brackets. Midpoints give
/// the value; `1/lo^e - 1/hi^e` per bracket bounds the enclosure error; the
/// omitted zeros are estimated from geometric spacing `x_(n+1) = q^2 x_n`.
pub fn power_sum(zeros: &[ZeroRecord], q0: &Rational, exponent: u32) -> Result<PowerSumResult> {
    check_q(q0)?;
    if exponent == 0 || exponent % 2 == 1 {
        return Err(Error::InvalidArgument(format!("exponent must be even and positive, got {exponent}")));
    }
    let last = zeros.last().ok_or_else(|| Error::InvalidArgument("no zeros given".into()))?;
    let inv_pow = |x: &Rational| x.powu(exponent).recip().expect("zeros are positive");
    let mut partial = Rational::zero();
    let mut enclosure_error = Rational::zero();
    for z in zeros {
        partial += &inv_pow(&z.mid());
        enclosure_error += &(inv_pow(&z.lo) - inv_pow(&z.hi));
    }
    let r = q0.powu(2 * exponent).recip().expect("q0 > 1");
    let tail_estimate = inv_pow(&last.lo) * &r / (Rational::one() - &r);
    let total_error = &enclosure_error + &tail_estimate;
    Ok(PowerSumResult { exponent, partial, enclosure_error, tail_estimate, total_error })
}

fn zero_params(q0: &Rational, zeros: &[ZeroRecord], tol: &Rational) -> std::collections::BTreeMap<String, String> {
    let width = zeros.iter().map(ZeroRecord::width).max().unwrap_or_default();
    params([("q", q0.to_string()), ("count", zeros.len().to_string()), ("tol", tol.to_string()), ("max_width", width.to_string())])
}

/// `sum 1/x_n^2 = 1/[3]!` from already computed zeros.
pub fn verify_quadratic_zeros(zeros: &[ZeroRecord], q0: &Rational, tol: &Rational) -> Result<VerifyReport> {
    let ps = power_sum(zeros, q0, 2)?;
    let rhs = q_factorial_at(3, q0).recip()?;
    Ok(VerifyReport::numeric("quadratic", zero_params(q0, zeros, tol), ps.partial, rhs, ps.total_error, tol.clone()))
}

pub fn verify_quadratic(q0: &Rational, count: usize, tol: &Rational) -> Result<VerifyReport> {
    let zeros = find_zeros(q0, count, tol)?;
    verify_quadratic_zeros(&zeros, q0, tol)
}

/// Coefficient `[2] q (1 + (q^2 - 1)/2)` multiplying `sum 1/x^4`.
pub fn quartic_lhs_factor<C: ExactField>(q: &C) -> C {
    let q2 = q.mul(q);
    let inner = C::one().add(&q2.sub(&C::one()).scale(&Rational::frac(1, 2)));
    q_int_at(2, q).mul(q).mul(&inner)
}

/// `8(q^2 - 1)/([2]^3 q) b_2^2 - 16 b_4/[4]!`.
pub fn quartic_rhs<C: ExactField>(q: &C, b2: &C, b4: &C) -> Result<C> {
    let two = q_int_at(2, q);
    let first = q
        .mul(q)
        .sub(&C::one())
        .scale(&Rational::from(8))
        .mul(&two.pow(3).mul(q).inv()?)
        .mul(&b2.mul(b2));
    let second = b4.scale(&Rational::from(16)).mul(&q_factorial_at(4, q).inv()?);
    Ok(first.sub(&second))
}

/// The quartic relation from already computed zeros. The budget is the power
/// sum's total error scaled by the left-hand factor.
pub fn verify_quartic_zeros(zeros: &[ZeroRecord], q0: &Rational, tol: &Rational) -> Result<VerifyReport> {
    let ps = power_sum(zeros, q0, 4)?;
    let factor = quartic_lhs_factor(q0);
    let b = q_bernoulli_numbers(4).at(q0)?;
    let rhs = quartic_rhs(q0, &b[2], &b[4])?;
    let lhs = &factor * &ps.partial;
    let budget = &factor * &ps.total_error;
    Ok(VerifyReport::numeric("quartic", zero_params(q0, zeros, tol), lhs, rhs, budget, tol.clone()))
}

pub fn verify_quartic(q0: &Rational, count: usize, tol: &Rational) -> Result<VerifyReport> {
    let zeros = find_zeros(q0, count, tol)?;
    verify_quartic_zeros(&zeros, q0, tol)
}

/// The quartic relation at `q = 1`, where the zeros are `n pi` and
/// `sum 1/x^4 = zeta(4)/pi^4`: both sides must equal `1/45`. The right side
/// comes from the symbolic `b_2^q`, `b_4^q` evaluated at 1.
pub fn check_quartic_limit() -> Result<VerifyReport> {
    let table = q_bernoulli_numbers(4);
    let q = QRatFunc::q();
    let rhs = quartic_rhs(&q, &table.entries[2], &table.entries[4])?.eval(&Rational::one())?;
    let lhs = quartic_lhs_factor(&Rational::one()) * zeta_even_rational(2)?;
    let classical = Rational::from(-16) * &classical_bernoulli(4)[4] / Rational::from(24);
    let target = Rational::frac(1, 45);
    let failures = [("lhs", &lhs), ("rhs", &rhs), ("classical", &classical)]
        .into_iter()
        .filter(|(_, v)| **v != target)
        .map(|(name, v)| format!("{name} = {v}, expected 1/45"))
        .collect();
    Ok(VerifyReport::exact("quartic-limit", params([("q", "1".to_string())]), 3, failures))
}

/// The geometric model `x_n^2 = q^(4n) [2][3] / ([4](q - 1))`.
pub fn approx_zero_model(q0: &Rational, n: usize) -> Result<Rational> {
    check_q(q0)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let num = q0.powu(4 * n as u32) * q_int_at(2, q0) * q_int_at(3, q0);
    let den = q_int_at(4, q0) * (q0 - &Rational::one());
    num.checked_div(&den)
}

/// Midpoint ratio `x_(n+1)/x_n` and its distance from `q^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacingRow {
    pub n: usize,
    pub ratio: Rational,
    pub deviation: Rational,
}

pub fn zero_spacing(zeros: &[ZeroRecord], q0: &Rational) -> Vec<SpacingRow> {
    let q2 = q0 * q0;
    zeros
        .windows(2)
        .map(|w| {
            let ratio = w[1].mid() / w[0].mid();
            let deviation = (&ratio - &q2).abs();
            SpacingRow { n: w[0].n, ratio, deviation }
        })
        .collect()
}

/// `zeta(2k)/pi^(2k)` against 1/6, 1/90, 1/945 for `k <= 3`, and the sign of
/// `(-1)^(k-1) b_2k` beyond that.
pub fn classical_cot_crosscheck(max_k: usize) -> Result<VerifyReport> {
    if max_k == 0 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    let targets = [Rational::frac(1, 6), Rational::frac(1, 90), Rational::frac(1, 945)];
    let b = classical_bernoulli(2 * max_k);
    let mut failures = Vec::new();
    for k in 1..=max_k {
        if k <= targets.len() {
            let z = zeta_even_rational(k)?;
            if z != targets[k - 1] {
                failures.push(format!("k={k}: {z}, expected {}", targets[k - 1]));
            }
        } else {
            let signed = if k % 2 == 1 { b[2 * k].clone() } else { -&b[2 * k] };
            if !signed.is_positive() {
                failures.push(format!("k={k}: (-1)^(k-1) b_2k = {signed} is not positive"));
            }
        }
    }
    Ok(VerifyReport::exact("zeta", params([("max_k", max_k.to_string())]), max_k, failures))
}

/// `n,lo,hi,mid` with decimal cells.
pub fn zeros_to_csv(zeros: &[ZeroRecord], digits: usize) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["n", "lo", "hi", "mid"]).map_err(csv_err)?;
    for z in zeros {
        w.write_record([z.n.to_string(), z.lo.to_decimal(digits), z.hi.to_decimal(digits), z.mid().to_decimal(digits)])
            .map_err(csv_err)?;
    }
    finish_csv(w)
}

/// Exact endpoints as strings plus decimal renderings.
pub fn zeros_to_json(zeros: &[ZeroRecord], digits: usize) -> Value {
    Value::Array(
        zeros
            .iter()
            .map(|z| {
                json!({
                    "n": z.n,
                    "lo": z.lo,
                    "hi": z.hi,
                    "certified": z.certified,
                    "mid_decimal": z.mid().to_decimal(digits),
                })
            })
            .collect(),
    )
}
