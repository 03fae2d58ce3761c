use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::{format_rational, rational_to_complex, Rational};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. Trailing zeros are trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactUniPoly {
    coeffs: Vec<Rational>,
}

impl ExactUniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| super::rational_from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Multiplicity of the root at zero.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + rational_to_complex(c))
    }
}

impl fmt::Display for ExactUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if neg { -c.clone() } else { c.clone() };
            let unit = mag == Rational::from_integer(1.into());
            match (k, unit) {
                (0, _) => f.write_str(&format_rational(&mag))?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{}*x", format_rational(&mag))?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{}*x^{k}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}
