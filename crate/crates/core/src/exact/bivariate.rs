use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{format_rational, rational_to_complex, Rational};

/// Sparse polynomial in `x` and `y` with rational coefficients.
///
/// Keys are exponent pairs `(i, j)` for `x^i y^j`; zero coefficients are never
/// stored, so the zero polynomial is the empty table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds from `(coefficient, i, j)` triples, merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32, u32)>,
    {
        let mut out = Self::zero();
        for (c, i, j) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree `max(i + j)`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// The constant polynomial's value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `c x^i y^j`.
    pub fn mul_monomial(&self, c: &Rational, i: u32, j: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `(x, y)` in double precision. Coefficients are rounded to the
    /// nearest double here and nowhere else.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for (&(i, j), c) in &self.terms {
            acc += rational_to_complex(c) * x.powu(i) * y.powu(j);
        }
        acc
    }

    /// Substitutes an exact `y` and collects the result by powers of `x`.
    pub fn specialize_y(&self, y0: &Rational) -> super::ExactUniPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Rational::zero());
            }
            coeffs[i] += c * num_traits::pow(y0.clone(), j as usize);
        }
        super::ExactUniPoly::new(coeffs)
    }

    /// Coefficients of `x^0 .. x^deg_x` after substituting a numeric `y`.
    pub fn specialize_y_numeric(&self, y0: Complex64) -> Vec<Complex64> {
        let deg = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += rational_to_complex(c) * y0.powu(j);
        }
        coeffs
    }

    /// Terms in the canonical print order: total degree descending, then
    /// `x`-exponent descending.
    fn canonical_order(&self) -> Vec<((u32, u32), &Rational)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by(|a, b| {
            let (ai, aj) = a.0;
            let (bi, bj) = b.0;
            (bi + bj).cmp(&(ai + aj)).then(bi.cmp(&ai))
        });
        out
    }
}

fn power(var: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

/// Canonical rendering, e.g. `7*x^6*y + 20*x^3*y^3 + y^5`.
impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, ((i, j), c)) in self.canonical_order().into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let vars: Vec<String> = [power("x", i), power("y", j)].into_iter().flatten().collect();
            if !mag.is_one() || vars.is_empty() {
                factors.push(format_rational(&mag));
            }
            factors.extend(vars);
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &rhs.terms {
                out.add_term(a + c, b + d, u * v);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $m(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_int;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        rational_from_int(v)
    }

    fn t5() -> BivariatePolynomial {
        BivariatePolynomial::from_terms([(q(4), 3, 1), (q(1), 0, 3)])
    }

    #[test]
    fn difference_of_squares() {
        let x = BivariatePolynomial::x();
        let y = BivariatePolynomial::y();
        let got = &(&x + &y) * &(&x - &y);
        let expect = BivariatePolynomial::from_terms([(q(1), 2, 0), (q(-1), 0, 2)]);
        assert_eq!(got, expect);
    }

    #[test]
    fn y_times_cubic_factor_is_t5() {
        let y = BivariatePolynomial::y();
        let inner = BivariatePolynomial::from_terms([(q(4), 3, 0), (q(1), 0, 2)]);
        assert_eq!(&y * &inner, t5());
    }

    #[test]
    fn product_with_zero_is_empty() {
        let z = BivariatePolynomial::zero();
        let p = &t5() * &z;
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &t5() - &t5();
        assert!(p.is_zero());
    }

    #[test]
    fn eval_t5_and_constant_term() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(t5().eval(one, one), Complex64::new(5.0, 0.0));
        let p = BivariatePolynomial::from_terms([(q(7), 0, 0), (q(3), 2, 1)]);
        assert_eq!(p.eval(Complex64::zero(), Complex64::zero()), Complex64::new(7.0, 0.0));
    }

    #[test]
    fn eval_t10_at_ones() {
        let t10 = BivariatePolynomial::from_terms([(q(9), 8, 1), (q(56), 5, 3), (q(21), 2, 5)]);
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(t10.eval(one, one).re, 86.0);
    }

    #[test]
    fn canonical_rendering() {
        let t8 = BivariatePolynomial::from_terms([(q(7), 6, 1), (q(20), 3, 3), (q(1), 0, 5)]);
        assert_eq!(t8.to_string(), "7*x^6*y + 20*x^3*y^3 + y^5");
        let mixed = BivariatePolynomial::from_terms([
            (Rational::new(3.into(), 2.into()), 1, 0),
            (q(-1), 0, 0),
            (q(-2), 1, 1),
        ]);
        assert_eq!(mixed.to_string(), "-2*x*y + 3/2*x - 1");
    }

    #[test]
    fn specialize_y_collects_powers_of_x() {
        let p = t5().specialize_y(&q(1));
        assert_eq!(p.coefficients(), &[q(1), q(0), q(0), q(4)]);
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePolynomial> {
        prop::collection::vec((-5i64..=5, 0u32..4, 0u32..4), 0..6).prop_map(|v| {
            BivariatePolynomial::from_terms(v.into_iter().map(|(c, i, j)| (q(c), i, j)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a * &b).terms().all(|(_, v)| !v.is_zero()));
        }

        #[test]
        fn eval_is_multiplicative(a in arb_poly(), b in arb_poly(),
                                  xr in -1.5f64..1.5, xi in -1.5f64..1.5,
                                  yr in -1.5f64..1.5, yi in -1.5f64..1.5) {
            let x = Complex64::new(xr, xi);
            let y = Complex64::new(yr, yi);
            let lhs = (&a * &b).eval(x, y);
            let rhs = a.eval(x, y) * b.eval(x, y);
            // Scale by the product of absolute evaluations to get a relative bound.
            let abs_a: f64 = a.terms().map(|((i, j), c)| crate::exact::rational_to_f64(c).abs() * x.norm().powi(i as i32) * y.norm().powi(j as i32)).sum();
            let abs_b: f64 = b.terms().map(|((i, j), c)| crate::exact::rational_to_f64(c).abs() * x.norm().powi(i as i32) * y.norm().powi(j as i32)).sum();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + abs_a * abs_b));
        }
    }
}
