use num_traits::{One, Zero};

use super::{BivariatePolynomial, Rational};
use crate::error::{Error, Result};

/// Polynomial in `t` whose coefficients are bivariate polynomials in `x, y`,
/// lowest power of `t` first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyInT {
    coeffs: Vec<BivariatePolynomial>,
}

impl PolyInT {
    pub fn new(mut coeffs: Vec<BivariatePolynomial>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![BivariatePolynomial::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: BivariatePolynomial, k: usize) -> Self {
        let mut coeffs = vec![BivariatePolynomial::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coefficient(&self, k: usize) -> BivariatePolynomial {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BivariatePolynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coefficient(k) + &other.coefficient(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coefficient(k) - &other.coefficient(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BivariatePolynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Drops every power `t^k` with `k > order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }
}

/// Truncated power series of `numerator / denominator` in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExpansion {
    pub numerator: PolyInT,
    pub denominator: PolyInT,
    /// Coefficient of `t^k` at index `k`.
    pub coefficients: Vec<BivariatePolynomial>,
}

impl SeriesExpansion {
    /// Checks `numerator == denominator * series (mod t^(order+1))` exactly.
    pub fn self_check(&self) -> bool {
        let order = self.coefficients.len() - 1;
        let series = PolyInT::new(self.coefficients.clone());
        self.denominator.mul(&series).truncate(order) == self.numerator.truncate(order)
    }
}

/// Exact long division of formal power series up to and including `t^order`.
pub fn series_expand(num: &PolyInT, den: &PolyInT, order: usize) -> Result<SeriesExpansion> {
    let d0 = den
        .coefficient(0)
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or(Error::ZeroConstantTerm)?;
    let inv = Rational::one() / d0;
    let mut coefficients: Vec<BivariatePolynomial> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num.coefficient(n);
        for k in 1..=n.min(den.coefficients().len().saturating_sub(1)) {
            let dk = &den.coefficients()[k];
            if !dk.is_zero() && !coefficients[n - k].is_zero() {
                acc = &acc - &(dk * &coefficients[n - k]);
            }
        }
        coefficients.push(acc.scale(&inv));
    }
    Ok(SeriesExpansion {
        numerator: num.clone(),
        denominator: den.clone(),
        coefficients,
    })
}
