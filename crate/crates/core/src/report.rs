use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::Rational;

/// Outcome of one identity check.
///
/// Numeric checks carry both sides; symbolic checks count mismatching cases
/// in `residual` and have a zero budget, so `pass` always reads
/// `residual <= error_budget + tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub cases: usize,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub residual: Rational,
    pub error_budget: Rational,
    pub tolerance: Rational,
    pub pass: bool,
    #[serde(default)]
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn numeric(
        identity: &str,
        parameters: BTreeMap<String, String>,
        lhs: Rational,
        rhs: Rational,
        error_budget: Rational,
        tolerance: Rational,
    ) -> Self {
        let residual = (&lhs - &rhs).abs();
        let mut r = VerifyReport {
            identity: identity.to_string(),
            parameters,
            cases: 1,
            lhs: Some(lhs),
            rhs: Some(rhs),
            residual,
            error_budget,
            tolerance,
            pass: false,
            failures: Vec::new(),
        };
        r.pass = r.decide();
        r
    }

    pub fn exact(
        identity: &str,
        parameters: BTreeMap<String, String>,
        cases: usize,
        failures: Vec<String>,
    ) -> Self {
        let mut r = VerifyReport {
            identity: identity.to_string(),
            parameters,
            cases,
            lhs: None,
            rhs: None,
            residual: Rational::from_integer(failures.len() as i64),
            error_budget: Rational::zero(),
            tolerance: Rational::zero(),
            pass: false,
            failures,
        };
        r.pass = r.decide();
        r
    }

    /// The pass rule, as a function of the stored fields only.
    pub fn decide(&self) -> bool {
        self.residual <= &self.error_budget + &self.tolerance
    }

    /// JSON with exact values as strings plus decimal renderings.
    pub fn to_json(&self, digits: usize) -> Value {
        let dec = |r: &Rational| r.to_decimal(digits);
        let mut v = serde_json::to_value(self).expect("report serializes");
        let obj = v.as_object_mut().expect("object");
        if let Some(l) = &self.lhs {
            obj.insert("lhs_decimal".into(), json!(dec(l)));
        }
        if let Some(r) = &self.rhs {
            obj.insert("rhs_decimal".into(), json!(dec(r)));
        }
        obj.insert("residual_decimal".into(), json!(sci(&self.residual)));
        obj.insert("error_budget_decimal".into(), json!(sci(&self.error_budget)));
        v
    }
}

/// Short scientific rendering for small positive quantities, exact digits.
pub fn sci(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = Rational::from_integer(10);
    let mut e: i32 = 0;
    let mut m = a.clone();
    while m >= ten {
        m = m / &ten;
        e += 1;
    }
    while m < Rational::one() {
        m = &m * &ten;
        e -= 1;
    }
    format!("{}{}e{}", if neg { "-" } else { "" }, m.to_decimal(6), e)
}

pub(crate) fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
