//! Command-line front end. Parsing lives here so the binary stays a thin
//! wrapper and the whole dispatch path can be driven from tests.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::bernoulli::{
    check_odd_vanishing, check_q_recursion, classical_shift_identity, csv_err, finish_csv, q_bernoulli_numbers,
    q_bernoulli_polynomials, zeta_even_rational, QBernoulliPolynomial, DEFAULT_MAX_N,
};
use crate::error::{Error, Result};
use crate::powerseries::{check_inverse_identity, DEFAULT_ORDER};
use crate::qcore::{check_leibniz, XPoly};
use crate::report::{sci, VerifyReport};
use crate::zeros::{
    approx_zero_model, check_quartic_limit, classical_cot_crosscheck, find_zeros, verify_quadratic_zeros,
    verify_quartic_zeros, zeros_to_csv, zeros_to_json, DEFAULT_COUNT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "qbern", version, about = "Exact q-Bernoulli numbers, q-sine zeros and identity checks")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Digits after the decimal point in decimal renderings
    #[arg(long, default_value_t = 20, global = true)]
    pub digits: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct QChoice {
    /// Evaluate at this rational q (p/q or decimal)
    #[arg(long, conflicts_with = "symbolic")]
    pub q: Option<Rational>,

    /// Keep q symbolic (the default when --q is absent)
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// q-Bernoulli numbers b_0 .. b_max_n
    Bernoulli {
        #[command(flatten)]
        q: QChoice,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// q-Bernoulli polynomials B_0(x) .. B_max_n(x)
    Polynomials {
        #[command(flatten)]
        q: QChoice,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Certified brackets around the first positive zeros of sin_q
    Zeros {
        #[arg(long)]
        q: Rational,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[arg(long, default_value = "1e-12")]
        tol: Rational,
    },
    /// Run one identity check
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        q: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[arg(long, default_value = "1e-12")]
        tol: Rational,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        /// Series truncation order for euler-inverse
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Random cases for leibniz
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// zeta(2k) / pi^(2k) as an exact rational
    Zeta {
        #[arg(long)]
        k: usize,
    },
    /// Geometric approximation x_n^2 of the n-th zero
    Model {
        #[arg(long)]
        q: Rational,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Quadratic,
    Quartic,
    QuarticLimit,
    Recursion,
    Shift,
    EulerInverse,
    Leibniz,
    Zeta,
    OddVanish,
}

/// Parse and run; returns the exit status and the text destined for stdout
/// (or stderr for usage errors).
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (code, e.render().to_string())
        }
    }
}

pub fn run(cfg: &CliConfig) -> (i32, String) {
    match dispatch(cfg) {
        Ok(out) => out,
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn dispatch(cfg: &CliConfig) -> Result<(i32, String)> {
    let d = cfg.digits;
    let out = match &cfg.command {
        Command::Bernoulli { q, max_n } => bernoulli(cfg.format, q.q.as_ref(), *max_n)?,
        Command::Polynomials { q, max_n } => polynomials(cfg.format, q.q.as_ref(), *max_n)?,
        Command::Zeros { q, count, tol } => {
            let z = find_zeros(q, *count, tol)?;
            match cfg.format {
                Format::Json => pretty(&zeros_to_json(&z, d)),
                Format::Csv => zeros_to_csv(&z, d)?,
                Format::Text => z.iter().fold(String::new(), |mut s, r| {
                    let _ = writeln!(s, "x_{} in [{}, {}]", r.n, r.lo.to_decimal(d), r.hi.to_decimal(d));
                    s
                }),
            }
        }
        Command::Verify { check, q, count, tol, max_n, order, cases, seed } => {
            let rep = verify(*check, q.as_ref(), *count, tol, *max_n, *order, *cases, *seed)?;
            return Ok((exit_code(&rep), render_report(&rep, cfg.format, d)?));
        }
        Command::Zeta { k } => {
            let v = zeta_even_rational(*k)?;
            match cfg.format {
                Format::Json => pretty(&json!({ "k": k, "value": v, "value_decimal": v.to_decimal(d) })),
                Format::Csv => format!("k,value\n{k},{v}\n"),
                Format::Text => format!("{v}\n"),
            }
        }
        Command::Model { q, n } => {
            let x2 = approx_zero_model(q, *n)?;
            let x = sqrt_decimal(&x2, d);
            match cfg.format {
                Format::Json => pretty(&json!({
                    "q": q, "n": n, "x_squared": x2,
                    "x_squared_decimal": x2.to_decimal(d), "x_decimal": x,
                })),
                Format::Csv => format!("q,n,x_squared,x_decimal\n{q},{n},{x2},{x}\n"),
                Format::Text => format!("x_{n}^2 = {x2}\nx_{n} = {x}\n"),
            }
        }
    };
    Ok((EXIT_OK, out))
}

pub fn exit_code(rep: &VerifyReport) -> i32 {
    if rep.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn symbolic_label(q: Option<&Rational>) -> String {
    q.map_or_else(|| "symbolic".to_string(), Rational::to_string)
}

fn bernoulli(format: Format, q: Option<&Rational>, max_n: usize) -> Result<String> {
    let t = q_bernoulli_numbers(max_n);
    Ok(match format {
        Format::Json => pretty(&t.to_json(q)?),
        Format::Csv => t.to_csv(q)?,
        Format::Text => {
            let mut s = String::new();
            match q {
                Some(q0) => {
                    for (n, v) in t.at(q0)?.iter().enumerate() {
                        let _ = writeln!(s, "b_{n} = {v}");
                    }
                }
                None => {
                    for (n, v) in t.entries.iter().enumerate() {
                        let _ = writeln!(s, "b_{n} = {v}");
                    }
                }
            }
            s
        }
    })
}

fn polynomials(format: Format, q: Option<&Rational>, max_n: usize) -> Result<String> {
    let polys = q_bernoulli_polynomials(max_n);
    let at = |p: &QBernoulliPolynomial| -> Result<Option<XPoly<Rational>>> {
        q.map(|q0| p.coeffs_in_x.try_map(|c| c.eval(q0))).transpose()
    };
    Ok(match format {
        Format::Json => {
            let rows = polys
                .iter()
                .map(|p| {
                    let mut row = json!({ "n": p.n, "coeffs_in_x": p.coeffs_in_x });
                    if let Some(v) = at(p)? {
                        row["coeffs_at_q"] = json!(v);
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            pretty(&json!({ "q": symbolic_label(q), "polynomials": rows }))
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(["n", "power", "num", "den"]).map_err(csv_err)?;
            for p in &polys {
                let numeric = at(p)?;
                for (k, c) in p.coeffs_in_x.coeffs().iter().enumerate() {
                    let (num, den) = match &numeric {
                        Some(v) => {
                            let c = v.coeff(k);
                            (c.numer().to_string(), c.denom().to_string())
                        }
                        None => (join(c.num().coeffs()), join(c.den().coeffs())),
                    };
                    w.write_record([p.n.to_string(), k.to_string(), num, den]).map_err(csv_err)?;
                }
            }
            finish_csv(w)?
        }
        Format::Text => {
            let mut s = String::new();
            for p in &polys {
                match at(p)? {
                    Some(v) => writeln!(s, "B_{}(x) = {v}", p.n),
                    None => writeln!(s, "B_{}(x) = {}", p.n, p.coeffs_in_x),
                }
                .expect("writing to a string");
            }
            s
        }
    })
}

fn join(c: &[Rational]) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter().map(Rational::to_string).collect::<Vec<_>>().join(";")
}

fn need_q(q: Option<&Rational>, check: &str) -> Result<Rational> {
    q.cloned().ok_or_else(|| Error::InvalidArgument(format!("--check {check} needs a numeric --q")))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    check: Check,
    q: Option<&Rational>,
    count: usize,
    tol: &Rational,
    max_n: usize,
    order: usize,
    cases: usize,
    seed: u64,
) -> Result<VerifyReport> {
    Ok(match check {
        Check::Quadratic => {
            let q0 = need_q(q, "quadratic")?;
            verify_quadratic_zeros(&find_zeros(&q0, count, tol)?, &q0, tol)?
        }
        Check::Quartic => {
            let q0 = need_q(q, "quartic")?;
            verify_quartic_zeros(&find_zeros(&q0, count, tol)?, &q0, tol)?
        }
        Check::QuarticLimit => check_quartic_limit()?,
        Check::Recursion => check_q_recursion(&q_bernoulli_polynomials(max_n)),
        Check::Shift => classical_shift_identity(max_n),
        Check::EulerInverse => check_inverse_identity(order),
        Check::Leibniz => check_leibniz(cases, seed),
        Check::Zeta => classical_cot_crosscheck(3)?,
        Check::OddVanish => check_odd_vanishing(&q_bernoulli_numbers(max_n)),
    })
}

fn render_report(rep: &VerifyReport, format: Format, digits: usize) -> Result<String> {
    let opt = |r: &Option<Rational>| r.as_ref().map(Rational::to_string).unwrap_or_default();
    Ok(match format {
        Format::Json => pretty(&rep.to_json(digits)),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(["identity", "pass", "cases", "lhs", "rhs", "residual", "error_budget", "tolerance"])
                .map_err(csv_err)?;
            w.write_record([
                rep.identity.clone(),
                rep.pass.to_string(),
                rep.cases.to_string(),
                opt(&rep.lhs),
                opt(&rep.rhs),
                rep.residual.to_string(),
                rep.error_budget.to_string(),
                rep.tolerance.to_string(),
            ])
            .map_err(csv_err)?;
            finish_csv(w)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}: {}", rep.identity, if rep.pass { "PASS" } else { "FAIL" });
            for (k, v) in &rep.parameters {
                let _ = writeln!(s, "  {k} = {v}");
            }
            let _ = writeln!(s, "  cases = {}", rep.cases);
            if let (Some(l), Some(r)) = (&rep.lhs, &rep.rhs) {
                let _ = writeln!(s, "  lhs = {}", l.to_decimal(digits));
                let _ = writeln!(s, "  rhs = {}", r.to_decimal(digits));
                let _ = writeln!(s, "  residual = {}", sci(&rep.residual));
                let _ = writeln!(s, "  error_budget = {}", sci(&rep.error_budget));
                let _ = writeln!(s, "  tolerance = {}", sci(&rep.tolerance));
            }
            for f in &rep.failures {
                let _ = writeln!(s, "  failure: {f}");
            }
            s
        }
    })
}

/// `sqrt(r)` truncated to `digits` decimals.
fn sqrt_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (r * &Rational::from_integer(&scale * &scale)).floor();
    let root = scaled.sqrt();
    Rational::from_big(num_rational::BigRational::new(root, scale)).to_decimal(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QRatFunc;

    fn run_str(args: &str) -> (i32, String) {
        run_args(std::iter::once("qbern").chain(args.split_whitespace()))
    }

    #[test]
    fn zeta_text() {
        assert_eq!(run_str("zeta --k 2"), (0, "1/90\n".to_string()));
        assert_eq!(run_str("zeta --k 3").1, "1/945\n");
    }

    #[test]
    fn symbolic_bernoulli_json() {
        let (code, out) = run_str("bernoulli --max-n 4 --symbolic --format json");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
        let b2: QRatFunc = serde_json::from_value(v[2]["value"].clone()).unwrap();
        assert_eq!(b2.eval(&Rational::from(2)).unwrap(), Rational::frac(3, 14));
    }

    #[test]
    fn numeric_bernoulli_text() {
        let (_, out) = run_str("bernoulli --max-n 2 --q 2");
        assert_eq!(out, "b_0 = 1\nb_1 = -1/2\nb_2 = 3/14\n");
        let (_, out) = run_str("bernoulli --max-n 2 --q 1 --format csv");
        assert_eq!(out, "n,num,den\n0,1,1\n1,-1,2\n2,1,6\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str("bernoulli --q 2 --symbolic").0, EXIT_USAGE);
        assert_eq!(run_str("zeros --q 1").0, EXIT_USAGE);
        assert_eq!(run_str("zeros --q 1/2").0, EXIT_USAGE);
        assert_eq!(run_str("verify --check quadratic").0, EXIT_USAGE);
        assert_eq!(run_str("verify --check nope").0, EXIT_USAGE);
        assert_eq!(run_str("zeta --k abc").0, EXIT_USAGE);
        assert_eq!(run_str("frobnicate").0, EXIT_USAGE);
    }

    #[test]
    fn symbolic_checks_pass() {
        for check in ["recursion", "shift", "zeta", "odd-vanish", "quartic-limit"] {
            let (code, out) = run_str(&format!("verify --check {check}"));
            assert_eq!(code, 0, "{out}");
            assert!(out.contains("PASS"));
        }
        assert_eq!(run_str("verify --check euler-inverse --order 8").0, 0);
        assert_eq!(run_str("verify --check leibniz --cases 20 --seed 7").0, 0);
    }

    #[test]
    fn failed_report_maps_to_exit_one() {
        let rep = VerifyReport::exact("shift", Default::default(), 1, vec!["n=1".into()]);
        assert_eq!(exit_code(&rep), EXIT_CHECK_FAILED);
        let text = render_report(&rep, Format::Text, 4).unwrap();
        assert_eq!(text, "shift: FAIL\n  cases = 1\n  failure: n=1\n");
    }

    #[test]
    fn model_output() {
        let (_, out) = run_str("model --q 2 --n 1 --digits 3");
        assert_eq!(out, "x_1^2 = 112/5\nx_1 = 4.732\n");
    }

    #[test]
    fn zeros_csv() {
        let (code, out) = run_str("zeros --q 2 --count 2 --tol 1/1000 --format csv --digits 2");
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "n,lo,hi,mid");
        assert!(lines[1].starts_with("1,4.69"), "{}", lines[1]);
    }

    #[test]
    fn report_json_is_valid() {
        let (code, out) = run_str("verify --check quadratic --q 2 --count 6 --tol 1e-10 --format json");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rhs"], "1/21");
        assert_eq!(v["pass"], code == 0);
        let rep: VerifyReport = serde_json::from_value(v).unwrap();
        assert_eq!(rep.decide(), rep.pass);
    }
}
