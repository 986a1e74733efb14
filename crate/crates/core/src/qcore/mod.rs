//! q-integers, q-factorials and q-binomials as explicit polynomials in `q`;
//! the Jackson derivative, the multiple-product q-Leibniz rule, and the
//! residues of the q-logarithmic derivative of a product of linear factors.

mod xpoly;

pub use xpoly::XPoly;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ExactField, QPoly, QRatFunc, Rational};
use crate::error::{Error, Result};
use crate::report::{params, VerifyReport};

/// `[n]_q = 1 + q + ... + q^(n-1)`, with `[0]_q = 0`.
///
/// Kept expanded so that `q = 1` is an ordinary point.
pub fn q_int(n: usize) -> QPoly {
    QPoly::from_ints(&vec![1; n])
}

/// `[n]_q!`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, k| &acc * &q_int(k))
}

/// Gaussian binomial `[n choose k]_q`, computed as the exact quotient of
/// q-factorials.
pub fn q_binomial(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::InvalidBinomial { n, k });
    }
    let num = q_factorial(n);
    let den = &q_factorial(k) * &q_factorial(n - k);
    let f = QRatFunc::new(&num, &den)?;
    assert!(f.is_polynomial(), "q-binomial must be a polynomial");
    Ok(f.num())
}

/// `[n]_q` evaluated in the coefficient field, for a given value of `q`.
pub fn q_int_at<C: ExactField>(n: usize, q: &C) -> C {
    let mut acc = C::zero();
    let mut pw = C::one();
    for _ in 0..n {
        acc = acc.add(&pw);
        pw = pw.mul(q);
    }
    acc
}

/// `[n]_q!` evaluated in the coefficient field.
pub fn q_factorial_at<C: ExactField>(n: usize, q: &C) -> C {
    (1..=n).fold(C::one(), |acc, k| acc.mul(&q_int_at(k, q)))
}

/// Jackson derivative `D_q`, applied termwise: `x^n -> [n]_q x^(n-1)`.
///
/// Pass `QRatFunc::q()` for a symbolic result, or a rational for a numeric one.
pub fn jackson_derivative<C: ExactField>(f: &XPoly<C>, q: &C) -> XPoly<C> {
    XPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.mul(&q_int_at(n, q)))
            .collect(),
    )
}

/// `D_q(f_1 ... f_n)` by the multiple-product q-Leibniz rule:
/// the sum over `i` of `f_1(qx)...f_{i-1}(qx) (D_q f_i)(x) f_{i+1}(x)...f_n(x)`.
pub fn q_leibniz_product_derivative<C: ExactField>(fs: &[XPoly<C>], q: &C) -> Result<XPoly<C>> {
    if fs.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let n = fs.len();
    // suffix[i] = f_i ... f_{n-1}
    let mut suffix = vec![XPoly::one(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &fs[i] * &suffix[i + 1];
    }
    let mut prefix = XPoly::one();
    let mut total = XPoly::zero();
    for (i, f) in fs.iter().enumerate() {
        let term = &(&prefix * &jackson_derivative(f, q)) * &suffix[i + 1];
        total = &total + &term;
        prefix = &prefix * &f.dilate(q);
    }
    Ok(total)
}

/// `(x - x_1)(x - x_2)...(x - x_n)` with pairwise distinct roots.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFactorProduct {
    roots: Vec<Rational>,
    variable: String,
}

impl LinearFactorProduct {
    pub fn new(roots: Vec<Rational>) -> Result<Self> {
        LinearFactorProduct::with_variable(roots, "x")
    }

    pub fn with_variable(roots: Vec<Rational>, variable: &str) -> Result<Self> {
        for (i, r) in roots.iter().enumerate() {
            if roots[..i].contains(r) {
                return Err(Error::DuplicateRoot(r.to_string()));
            }
        }
        Ok(LinearFactorProduct { roots, variable: variable.to_string() })
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn factors<C: ExactField>(&self) -> Vec<XPoly<C>> {
        self.roots
            .iter()
            .map(|r| XPoly::linear_factor(&C::from_rational(r)))
            .collect()
    }

    pub fn expanded<C: ExactField>(&self) -> XPoly<C> {
        XPoly::product(&self.factors::<C>())
    }
}

/// Residues `A_k` of the simple-pole expansion
/// `D_q(prod (x - x_k)) / prod (x - x_k) = sum A_k / (x - x_k)`.
///
/// Each residue is the limit `(x - x_k) * (pole expansion)` at `x = x_k`,
/// taken term by term: the `k`-th term contributes
/// `prod_{j<k} (q x_k - x_j)/(x_k - x_j)`, and each later term `i` contributes
/// `(q - 1) x_k / (x_k - x_i)` times the same kind of product over `j < i`, `j != k`.
pub fn q_log_derivative_residues<C: ExactField>(
    p: &LinearFactorProduct,
    q: &C,
) -> Result<Vec<(Rational, C)>> {
    let xs: Vec<C> = p.roots.iter().map(C::from_rational).collect();
    let q_minus_one = q.sub(&C::one());
    let mut out = Vec::with_capacity(xs.len());
    for (k, xk) in xs.iter().enumerate() {
        let qxk = q.mul(xk);
        let ratio = |xj: &C| -> Result<C> { Ok(qxk.sub(xj).mul(&xk.sub(xj).inv()?)) };
        let mut running = C::one();
        for xj in &xs[..k] {
            running = running.mul(&ratio(xj)?);
        }
        let mut residue = running.clone();
        let lead = q_minus_one.mul(xk);
        for xi in &xs[k + 1..] {
            residue = residue.add(&lead.mul(&running).mul(&xk.sub(xi).inv()?));
            running = running.mul(&ratio(xi)?);
        }
        out.push((p.roots[k].clone(), residue));
    }
    Ok(out)
}

/// Randomized check of the q-Leibniz rule against the Jackson derivative of
/// the expanded product, plus the closed-form two-root residues verified
/// symbolically in `q`.
pub fn check_leibniz(cases: usize, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let rand_rat = |rng: &mut ChaCha8Rng| Rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=6));

    for case in 0..cases {
        let q = Rational::frac(rng.gen_range(1..=12), rng.gen_range(1..=6));
        let nf = rng.gen_range(1..=4);
        let fs: Vec<XPoly<Rational>> = (0..nf)
            .map(|_| {
                let deg = rng.gen_range(0..=4);
                XPoly::new((0..=deg).map(|_| rand_rat(&mut rng)).collect())
            })
            .collect();
        let lhs = q_leibniz_product_derivative(&fs, &q).expect("nonempty");
        let rhs = jackson_derivative(&XPoly::product(&fs), &q);
        if lhs != rhs {
            failures.push(format!("leibniz case {case} (q = {q})"));
        }
    }

    let pairs = [(1, 2), (-3, 5), (0, 7), (2, -1)];
    let qs = QRatFunc::q();
    for (a, b) in pairs {
        let (x1, x2) = (Rational::from(a), Rational::from(b));
        let p = LinearFactorProduct::new(vec![x1.clone(), x2.clone()]).expect("distinct");
        let res = q_log_derivative_residues(&p, &qs).expect("distinct roots");
        let x1f = QRatFunc::from_rational(x1.clone());
        let x2f = QRatFunc::from_rational(x2.clone());
        let a1 = (&(&qs * &x1f) - &x2f).scale_by(&(&x1 - &x2).recip().expect("distinct"));
        let a2 = (&(&qs * &x2f) - &x1f).scale_by(&(&x2 - &x1).recip().expect("distinct"));
        if res[0].1 != a1 || res[1].1 != a2 {
            failures.push(format!("two-root residues for roots ({x1}, {x2})"));
        }
    }

    VerifyReport::exact(
        "leibniz",
        params([("cases", cases.to_string()), ("seed", seed.to_string())]),
        cases + pairs.len(),
        failures,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn q_integers() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(1), QPoly::one());
        assert_eq!(q_int(3), QPoly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0), QPoly::one());
        assert_eq!(q_factorial(3), QPoly::from_ints(&[1, 2, 2, 1]));
        assert_eq!(q_factorial(3).eval(&Rational::one()), r(6));
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(5, 0).unwrap(), QPoly::one());
        assert_eq!(q_binomial(2, 1).unwrap(), QPoly::from_ints(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), QPoly::from_ints(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(2, 3), Err(Error::InvalidBinomial { n: 2, k: 3 }));
    }

    #[test]
    fn jackson_on_monomials() {
        let qs = QRatFunc::q();
        let x3 = XPoly::monomial(QRatFunc::one(), 3);
        assert_eq!(
            jackson_derivative(&x3, &qs),
            XPoly::monomial(QRatFunc::from_qpoly(&q_int(3)), 2)
        );
        assert!(jackson_derivative(&XPoly::constant(r(7)), &r(3)).is_zero());
        let p = XPoly::from_ints(&[2, -3, 1]);
        assert_eq!(jackson_derivative(&p, &r(3)), XPoly::from_ints(&[-3, 4]));
    }

    /// The difference quotient `(f(qx) - f(x)) / ((q - 1) x)` at a sample point.
    fn difference_quotient(f: &XPoly<Rational>, q: &Rational, x: &Rational) -> Rational {
        (f.eval(&(q * x)) - f.eval(x)) / ((q - &Rational::one()) * x)
    }

    #[test]
    fn jackson_matches_difference_quotient() {
        let f = XPoly::new(vec![Rational::frac(1, 3), r(-2), Rational::frac(5, 7), r(1), r(-4)]);
        let q = Rational::frac(3, 2);
        let d = jackson_derivative(&f, &q);
        for x in [r(1), Rational::frac(-2, 5), r(3)] {
            assert_eq!(d.eval(&x), difference_quotient(&f, &q, &x));
        }
    }

    #[test]
    fn leibniz_examples() {
        let q = r(3);
        let f = XPoly::from_ints(&[1, 2, 3]);
        assert_eq!(
            q_leibniz_product_derivative(std::slice::from_ref(&f), &q).unwrap(),
            jackson_derivative(&f, &q)
        );
        let fs = [XPoly::from_ints(&[-1, 1]), XPoly::from_ints(&[-2, 1])];
        let two = &(&jackson_derivative(&fs[0], &q) * &fs[1]) + &(&fs[0].dilate(&q) * &jackson_derivative(&fs[1], &q));
        let got = q_leibniz_product_derivative(&fs, &q).unwrap();
        assert_eq!(got, two);
        assert_eq!(got, XPoly::from_ints(&[-3, 4]));
        assert_eq!(
            q_leibniz_product_derivative::<Rational>(&[], &q),
            Err(Error::EmptyProduct)
        );
    }

    #[test]
    fn residue_examples() {
        let p = LinearFactorProduct::new(vec![r(1), r(2)]).unwrap();
        let res = q_log_derivative_residues(&p, &r(3)).unwrap();
        assert_eq!(res, vec![(r(1), r(-1)), (r(2), r(5))]);

        let p = LinearFactorProduct::new(vec![r(-1), Rational::frac(1, 2), r(4)]).unwrap();
        let res = q_log_derivative_residues(&p, &Rational::one()).unwrap();
        assert!(res.iter().all(|(_, a)| a.is_one()));

        assert!(matches!(
            LinearFactorProduct::new(vec![r(1), r(2), r(1)]),
            Err(Error::DuplicateRoot(_))
        ));
    }

    #[test]
    fn symbolic_two_root_residue() {
        let qs = QRatFunc::q();
        let p = LinearFactorProduct::new(vec![r(3), r(-5)]).unwrap();
        let res = q_log_derivative_residues(&p, &qs).unwrap();
        // (3q + 5)/8 and (-5q - 3)/(-8)
        let a1 = QRatFunc::from_qpoly(&QPoly::new(vec![Rational::frac(5, 8), Rational::frac(3, 8)]));
        let a2 = QRatFunc::from_qpoly(&QPoly::new(vec![Rational::frac(3, 8), Rational::frac(5, 8)]));
        assert_eq!(res[0].1, a1);
        assert_eq!(res[1].1, a2);
    }

    #[test]
    fn leibniz_report_passes() {
        let rep = check_leibniz(40, 7);
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.cases, 44);
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::frac(n, d))
    }

    fn xpoly() -> impl Strategy<Value = XPoly<Rational>> {
        prop::collection::vec(rat(), 1..=5).prop_map(XPoly::new)
    }

    fn distinct_roots() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::btree_set((-12i64..=12, 1i64..=3), 1..=5).prop_map(|s| {
            let v: std::collections::BTreeSet<Rational> =
                s.into_iter().map(|(n, d)| Rational::frac(n, d)).collect();
            v.into_iter().collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn q_int_and_factorial_at_one(n in 0usize..15) {
            prop_assert_eq!(q_int(n).eval(&Rational::one()), Rational::from(n as i64));
            let fact: i64 = (1..=n as i64).product();
            prop_assert_eq!(q_factorial(n).eval(&Rational::one()), Rational::from(fact));
        }

        #[test]
        fn q_binomial_symmetry(n in 0usize..9, k in 0usize..9) {
            prop_assume!(k <= n);
            prop_assert_eq!(q_binomial(n, k).unwrap(), q_binomial(n, n - k).unwrap());
        }

        #[test]
        fn leibniz_matches_expanded(fs in prop::collection::vec(xpoly(), 1..=4), q in rat()) {
            let lhs = q_leibniz_product_derivative(&fs, &q).unwrap();
            prop_assert_eq!(lhs, jackson_derivative(&XPoly::product(&fs), &q));
        }

        #[test]
        fn residues_recombine(roots in distinct_roots(), q in rat()) {
            let p = LinearFactorProduct::new(roots.clone()).unwrap();
            let res = q_log_derivative_residues(&p, &q).unwrap();
            let factors = p.factors::<Rational>();
            // sum_k A_k prod_{j != k} (x - x_j) must equal D_q P.
            let mut recombined = XPoly::zero();
            for (k, (_, a)) in res.iter().enumerate() {
                let others = XPoly::product(factors.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, f)| f));
                recombined = &recombined + &others.scale(a);
            }
            let expanded = p.expanded::<Rational>();
            let dq = jackson_derivative(&expanded, &q);
            prop_assert_eq!(&recombined, &dq);
            // independent route: A_k = D_q P(x_k) / P'(x_k)
            let dp = expanded.derivative();
            for (xk, a) in &res {
                prop_assert_eq!(a.clone(), dq.eval(xk) / dp.eval(xk));
            }
            let total: Rational = res.iter().map(|(_, a)| a.clone()).sum();
            prop_assert_eq!(total, q_int_at(roots.len(), &q));
        }
    }
}
