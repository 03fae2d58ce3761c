//! Generators for the Pascal-ray polynomials `T_n^{(r,q,p)}(x, y)`: a linear
//! recurrence, the direct binomial sum, and a power-series expansion of the
//! generating function. All three are exact and independent of each other.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, rational_ln_abs, rational_to_f64, series_expand, BivariatePolynomial, PolyInT,
    Rational,
};

/// Linear recurrence `T_n = sum_l coefficients[l-1] * T_{n-l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub r: i64,
    pub q: i64,
    pub p: i64,
    /// Multiplier of `T_{n-l}` at index `l - 1`.
    pub coefficients: Vec<BivariatePolynomial>,
}

impl RecurrenceSpec {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Inhomogeneous term at index `n`: the coefficient of `t^n` in
    /// `y^p t^(p+1) (1 - x t)^(r-p-1)`. It only matters when `q <= 0`, where
    /// the seeds stop before the recurrence becomes homogeneous.
    fn forcing(&self, n: i64) -> BivariatePolynomial {
        let m = n - self.p - 1;
        if m < 0 || m > self.r - self.p - 1 {
            return BivariatePolynomial::zero();
        }
        let mut c = Rational::from_integer(binomial((self.r - self.p - 1) as u64, m));
        if m % 2 == 1 {
            c = -c;
        }
        BivariatePolynomial::monomial(c, m as u32, self.p as u32)
    }
}

pub fn validate_params(r: i64, q: i64, p: i64) -> Result<()> {
    if r < 1 || p < 0 || p > r - 1 || q + r <= 0 {
        return Err(Error::InvalidParameters { r, q, p });
    }
    Ok(())
}

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

pub fn build_recurrence(r: i64, q: i64, p: i64) -> Result<RecurrenceSpec> {
    validate_params(r, q, p)?;
    let order = (r + q.max(0)) as usize;
    let mut coefficients = vec![BivariatePolynomial::zero(); order];
    // (1 - x t)^r - y^r t^(q+r) = 1 - sum_l c_l t^l
    for l in 1..=r {
        let mut c = -int(binomial(r as u64, l));
        if l % 2 == 1 {
            c = -c;
        }
        coefficients[(l - 1) as usize].add_term(l as u32, 0, c);
    }
    coefficients[(q + r - 1) as usize].add_term(0, r as u32, Rational::one());
    Ok(RecurrenceSpec { r, q, p, coefficients })
}

/// `T_0 ..= T_count`.
pub fn terms_by_recurrence(spec: &RecurrenceSpec, count: usize) -> Vec<BivariatePolynomial> {
    let (r, q, p) = (spec.r, spec.q, spec.p);
    let seeded = r + q + p - 1;
    let mut out: Vec<BivariatePolynomial> = Vec::with_capacity(count + 1);
    for j in 0..=count as i64 {
        let term = if j <= p {
            BivariatePolynomial::zero()
        } else if j <= seeded {
            BivariatePolynomial::monomial(int(binomial((j - 1) as u64, p)), (j - p - 1) as u32, p as u32)
        } else {
            let mut acc = spec.forcing(j);
            for (l, c) in spec.coefficients.iter().enumerate() {
                let idx = j - 1 - l as i64;
                if idx >= 0 && !c.is_zero() {
                    acc = &acc + &(c * &out[idx as usize]);
                }
            }
            acc
        };
        out.push(term);
    }
    out
}

/// `T_(n+1)` straight from the binomial sum over `k`.
pub fn term_by_binomial_sum(r: i64, q: i64, p: i64, n: i64) -> Result<BivariatePolynomial> {
    validate_params(r, q, p)?;
    let mut out = BivariatePolynomial::zero();
    if n < p {
        return Ok(out);
    }
    let kmax = (n - p) / (q + r);
    for k in 0..=kmax {
        let top = n - q * k;
        if top < 0 {
            continue;
        }
        let c = binomial(top as u64, p + r * k);
        out.add_term((n - p - (q + r) * k) as u32, (p + r * k) as u32, int(c));
    }
    Ok(out)
}

/// `T_1 ..= T_(count+1)` as the coefficients of `t^0 ..= t^count` in
/// `y^p t^p (1 - x t)^(r-p-1) / ((1 - x t)^r - y^r t^(q+r))`.
///
/// The denominator has constant term 1 for every admissible triple,
/// including `q <= 0`.
pub fn terms_by_series(r: i64, q: i64, p: i64, count: usize) -> Result<Vec<BivariatePolynomial>> {
    validate_params(r, q, p)?;
    let one_minus_xt = PolyInT::new(vec![
        BivariatePolynomial::one(),
        -&BivariatePolynomial::x(),
    ]);
    let num = PolyInT::monomial(BivariatePolynomial::y().pow(p as u32), p as usize)
        .mul(&one_minus_xt.pow((r - p - 1) as u32));
    let den = one_minus_xt
        .pow(r as u32)
        .sub(&PolyInT::monomial(BivariatePolynomial::y().pow(r as u32), (q + r) as usize));
    let s = series_expand(&num, &den, count)?;
    Ok(s.coefficients)
}

/// Monomial prefactor of a `(2,1,1)` term, fixed by the index mod 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialClass {
    Y,
    XY,
    X2Y,
}

impl MonomialClass {
    pub fn for_index(i: usize) -> Self {
        match i % 3 {
            2 => MonomialClass::Y,
            0 => MonomialClass::XY,
            _ => MonomialClass::X2Y,
        }
    }

    pub fn x_exponent(self) -> u32 {
        match self {
            MonomialClass::Y => 0,
            MonomialClass::XY => 1,
            MonomialClass::X2Y => 2,
        }
    }
}

/// `T_i = class * h(x^3, y^2)`, with `h` stored over `(u, v)` in the `x, y`
/// slots of a bivariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFactorization {
    pub class: MonomialClass,
    pub h: BivariatePolynomial,
}

impl PeriodicFactorization {
    pub fn reconstruct(&self) -> BivariatePolynomial {
        let e = self.class.x_exponent();
        BivariatePolynomial::from_terms(
            self.h
                .terms()
                .map(|((a, b), c)| (c.clone(), 3 * a + e, 2 * b + 1)),
        )
    }
}

pub fn periodic_factor(t: &BivariatePolynomial, i: usize) -> Result<PeriodicFactorization> {
    let class = MonomialClass::for_index(i);
    let e = class.x_exponent();
    let mut h = BivariatePolynomial::zero();
    for ((a, b), c) in t.terms() {
        if a < e || (a - e) % 3 != 0 || b < 1 || (b - 1) % 2 != 0 {
            return Err(Error::NotFactorable { index: i });
        }
        h.add_term((a - e) / 3, (b - 1) / 2, c.clone());
    }
    Ok(PeriodicFactorization { class, h })
}

/// `tau_n = T_n(1, 1)` for the `(2,1,1)` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauValue {
    pub n: usize,
    pub value: Rational,
}

const TAU_CHECK_POINTS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

/// `x^(1/2-n) T_n(x, x^(3/2))`, summed term by term in log space so large
/// `n` does not overflow.
pub fn normalized_tau_at(t: &BivariatePolynomial, n: usize, x: f64) -> f64 {
    let lx = x.ln();
    let mut acc = 0.0;
    for ((i, j), c) in t.terms() {
        let e = i as f64 * lx + j as f64 * (1.5 * lx) + (0.5 - n as f64) * lx;
        let sign = if c < &Rational::zero() { -1.0 } else { 1.0 };
        acc += sign * (rational_ln_abs(c) + e).exp();
    }
    acc
}

fn check_x_independence(t: &BivariatePolynomial, n: usize, value: &Rational) -> Result<()> {
    let target = rational_to_f64(value);
    for &x in &TAU_CHECK_POINTS {
        let got = normalized_tau_at(t, n, x);
        let scale = target.abs().max(f64::MIN_POSITIVE);
        if (got - target).abs() > 1e-9 * scale && (got - target).abs() > 1e-300 {
            return Err(Error::XDependenceDetected {
                n,
                detail: format!("x={x}: {got:e} vs {target:e}"),
            });
        }
    }
    Ok(())
}

fn sum_coefficients(t: &BivariatePolynomial) -> Rational {
    t.terms().fold(Rational::zero(), |acc, (_, c)| acc + c)
}

pub fn tau_exact(n: usize) -> Result<TauValue> {
    let spec = build_recurrence(2, 1, 1)?;
    let terms = terms_by_recurrence(&spec, n);
    let value = sum_coefficients(&terms[n]);
    check_x_independence(&terms[n], n, &value)?;
    Ok(TauValue { n, value })
}

/// `tau_0 ..= tau_count`, each checked like [`tau_exact`].
pub fn tau_sequence(count: usize) -> Result<Vec<TauValue>> {
    let spec = build_recurrence(2, 1, 1)?;
    terms_by_recurrence(&spec, count)
        .iter()
        .enumerate()
        .map(|(n, t)| {
            let value = sum_coefficients(t);
            check_x_independence(t, n, &value)?;
            Ok(TauValue { n, value })
        })
        .collect()
}
