use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::RootTarget;
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, ExactUniPoly, Rational};

type C = Complex64;

/// Double-precision polynomial, lowest degree first, divided through by its
/// largest coefficient modulus. Zero roots are split off beforehand.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericUniPoly {
    coeffs: Vec<C>,
    scale: f64,
    zero_multiplicity: usize,
}

impl NumericUniPoly {
    /// From raw coefficients (lowest degree first). Trailing zeros are
    /// trimmed and leading zeros counted as roots at 0.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        let mut v = coeffs;
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        if v.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let zero_multiplicity = v.iter().take_while(|c| c.is_zero()).count();
        let v: Vec<C> = v.split_off(zero_multiplicity);
        let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if !scale.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(Self {
            coeffs: v.into_iter().map(|c| c / scale).collect(),
            scale,
            zero_multiplicity,
        })
    }

    pub fn from_reals(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| C::new(c, 0.0)).collect())
    }

    /// Normalised coefficients of the deflated polynomial.
    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn horner(coeffs: impl DoubleEndedIterator<Item = C>, z: C) -> (C, C) {
        let mut p = C::zero();
        let mut dp = C::zero();
        for c in coeffs.rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Value of the deflated, normalised polynomial.
    pub fn eval(&self, z: C) -> C {
        Self::horner(self.coeffs.iter().copied(), z).0
    }
}

/// Rounds `a / b` once, from exact rationals.
fn ratio_to_f64(a: &Rational, b: &Rational) -> f64 {
    rational_to_f64(&(a / b))
}

/// Converts exact coefficients with a single rounding each, after dividing
/// by the largest one; the root at zero is split off.
pub fn exact_to_numeric(p: &ExactUniPoly) -> Result<NumericUniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = p.zero_multiplicity();
    let rest = &p.coefficients()[m..];
    let big = rest.iter().map(|c| c.abs()).max().expect("nonzero");
    let scale = rational_to_f64(&big);
    if !scale.is_finite() || scale == 0.0 {
        return Err(Error::Overflow);
    }
    Ok(NumericUniPoly {
        coeffs: rest.iter().map(|c| C::new(ratio_to_f64(c, &big), 0.0)).collect(),
        scale,
        zero_multiplicity: m,
    })
}

/// Unique positive root of `|c_d| r^d = sum_{k<d} |c_k| r^k`, from log
/// moduli of the coefficients (lowest first, `-inf` for zeros).
pub fn tight_cauchy_radius(log_abs: &[f64]) -> f64 {
    let d = log_abs.len() - 1;
    if d == 0 || log_abs[..d].iter().all(|v| *v == f64::NEG_INFINITY) {
        return 0.0;
    }
    let f = |u: f64| {
        let terms: Vec<f64> = (0..d).map(|k| log_abs[k] + (k as f64 - d as f64) * u).collect();
        log_sum_exp(&terms) - log_abs[d]
    };
    let (mut lo, mut hi) = (-800.0, 800.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

pub(crate) fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

impl RootTarget for NumericUniPoly {
    fn degree(&self) -> usize {
        self.deg()
    }

    fn deflated_zeros(&self) -> usize {
        self.zero_multiplicity
    }

    fn newton_correction(&self, z: C) -> C {
        let d = self.deg();
        if z.norm() <= 1.0 {
            let (p, dp) = Self::horner(self.coeffs.iter().copied(), z);
            return p / dp;
        }
        // p(z) = z^d rp(w), w = 1/z, with rp the reversed polynomial.
        let w = z.inv();
        let (rp, drp) = Self::horner(self.coeffs.iter().rev().copied(), w);
        rp / (d as f64 * w * rp - w * w * drp)
    }

    fn log_monic_value(&self, z: C) -> C {
        let d = self.deg();
        let lead = self.coeffs[d];
        if z.norm() <= 1.0 {
            (self.eval(z) / lead).ln()
        } else {
            let w = z.inv();
            let (rp, _) = Self::horner(self.coeffs.iter().rev().copied(), w);
            d as f64 * z.ln() + (rp / lead).ln()
        }
    }

    fn residual(&self, z: C) -> f64 {
        let (num, den) = compensated_eval(&self.coeffs, z);
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    fn root_radius(&self) -> f64 {
        let logs: Vec<f64> = self.coeffs.iter().map(|c| c.norm().ln()).collect();
        tight_cauchy_radius(&logs)
    }
}

/// Double-double real: `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn new(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Clone, Copy, Debug)]
struct DdC {
    re: Dd,
    im: Dd,
}

impl DdC {
    fn from(c: C) -> Self {
        DdC { re: Dd::new(c.re), im: Dd::new(c.im) }
    }

    fn add(self, o: DdC) -> DdC {
        DdC { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn norm(self) -> f64 {
        (self.re.hi + self.re.lo).hypot(self.im.hi + self.im.lo)
    }
}

/// `(|p(z)|, sum |c_k| |z|^k)` with Horner run in double-double arithmetic.
/// For `|z| > 1` both are divided by `|z|^d` (reversed polynomial in `1/z`).
fn compensated_eval(coeffs: &[C], z: C) -> (f64, f64) {
    let (order, x): (Vec<C>, C) = if z.norm() <= 1.0 {
        (coeffs.to_vec(), z)
    } else {
        (coeffs.iter().rev().copied().collect(), z.inv())
    };
    let xd = DdC::from(x);
    let mut acc = DdC::from(C::zero());
    let mut abs = 0.0;
    let ax = x.norm();
    for c in order.iter().rev() {
        acc = acc.mul(xd).add(DdC::from(*c));
        abs = abs * ax + c.norm();
    }
    (acc.norm(), abs)
}
