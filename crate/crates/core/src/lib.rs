//! Exact q-calculus toolkit.
//!
//! Jackson q-exponentials and the q-derivative, q-Bernoulli numbers and
//! polynomials as exact rational functions of `q`, certified zeros of the
//! q-sine for `q > 1`, and checks of the power-sum identities that tie those
//! zeros to the q-Bernoulli numbers.

pub mod arith;
pub mod error;

pub use arith::{ExactField, QPoly, QRatFunc, Rational};
pub use error::{Error, Result};
pub mod bernoulli;
pub mod cli;
pub mod powerseries;
pub mod qcore;
pub mod report;
pub mod zeros;

pub use report::VerifyReport;
