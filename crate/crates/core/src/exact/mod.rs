//! Exact arithmetic substrate: arbitrary-precision rationals, sparse bivariate
//! polynomials in `x, y`, dense univariate polynomials and formal power-series
//! division of rational functions in `t`.
//!
//! Nothing in here touches floating point except the evaluation entry points,
//! which convert coefficients at the moment of evaluation.

mod bivariate;
mod series;
mod univariate;

pub use bivariate::BivariatePolynomial;
pub use series::{series_expand, PolyInT, SeriesExpansion};
pub use univariate::ExactUniPoly;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

pub fn rational_from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Nearest double to a rational; infinite when out of range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative_like() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Natural log of `|r|` that stays finite for coefficients far outside the
/// double range.
pub fn rational_ln_abs(r: &Rational) -> f64 {
    fn ln_big(v: &BigInt) -> f64 {
        let bits = v.bits();
        if bits < 1000 {
            v.to_f64().map(|f| f.abs().ln()).unwrap_or(f64::INFINITY)
        } else {
            let shift = bits - 60;
            let top: BigInt = v >> shift;
            top.to_f64().unwrap().abs().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

pub(crate) fn rational_to_complex(r: &Rational) -> Complex64 {
    Complex64::new(rational_to_f64(r), 0.0)
}

trait SignLike {
    fn is_negative_like(&self) -> bool;
}

impl SignLike for Rational {
    fn is_negative_like(&self) -> bool {
        self.numer() < &BigInt::zero()
    }
}

pub(crate) fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
