use num_complex::Complex64;

use super::numeric::{log_sum_exp, tight_cauchy_radius};
use super::RootTarget;
use crate::cubic::{family_cubic, solve_chain};
use crate::error::{Error, Result};
use crate::exact::rational_ln_abs;
use crate::sequence::{build_recurrence, terms_by_recurrence};

type C = Complex64;

/// `T_n(x, y0) / x^m` of the `(2,1,1)` family, evaluated through the residues
/// of its generating function at the roots of the characteristic cubic
/// instead of through its coefficients.
///
/// Past degree ~100 the monomial coefficients of `T_n(x, 1)` are too badly
/// conditioned for double precision; the residue form is not.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    n: usize,
    y0: C,
    zeros_at_origin: usize,
    /// `ln |coefficient of x^k|` of the deflated polynomial.
    log_abs: Vec<f64>,
    log_lead: C,
}

/// Multiplicity of `x = 0` as a root of `T_n(x, y0)`, `n >= 2`.
pub fn structural_zero_order(n: usize) -> usize {
    match n % 3 {
        2 => 0,
        0 => 1,
        _ => 2,
    }
}

impl FamilyMember {
    pub fn new(n: usize, y0: C) -> Result<Self> {
        if y0 == C::new(0.0, 0.0) {
            return Err(Error::ZeroY);
        }
        if n < 3 {
            return Err(Error::InvalidArgument(format!("family member needs n >= 3, got {n}")));
        }
        let t = terms_by_recurrence(&build_recurrence(2, 1, 1)?, n).swap_remove(n);
        let m = structural_zero_order(n);
        let deg_x = t.terms().map(|((i, _), _)| i).max().unwrap_or(0) as usize;
        let mut log_abs = vec![f64::NEG_INFINITY; deg_x + 1 - m];
        let ly = y0.norm().ln();
        let mut log_lead = C::new(0.0, 0.0);
        for ((i, j), c) in t.terms() {
            let k = i as usize - m;
            log_abs[k] = rational_ln_abs(c) + j as f64 * ly;
            if i as usize == deg_x {
                let sign = if c < &crate::exact::Rational::from_integer(0.into()) { C::new(-1.0, 0.0).ln() } else { C::new(0.0, 0.0) };
                log_lead = C::new(rational_ln_abs(c), 0.0) + sign + j as f64 * y0.ln();
            }
        }
        Ok(Self { n, y0, zeros_at_origin: m, log_abs, log_lead })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ln |c_k|` of the deflated polynomial, lowest degree first.
    pub fn log_coefficients(&self) -> &[f64] {
        &self.log_abs
    }

    /// `ln a_k` for the three residue terms `a_k = t_k^(1-n) / c'(t_k)` and
    /// their logarithmic derivatives in `x`.
    fn residue_terms(&self, x: C) -> [(C, C); 3] {
        let y2 = self.y0 * self.y0;
        let w = y2.inv();
        let cub = family_cubic(x, self.y0).expect("y0 checked");
        let (roots, _) = solve_chain(&cub);
        let n1 = 1.0 - self.n as f64;
        let one = C::new(1.0, 0.0);
        roots.as_array().map(|t0| {
            // Near x t = 1 the expanded cubic cancels badly; polish on the
            // factored form (1 - x t)^2 - y0^2 t^3 and keep 1 - x t explicit.
            let mut t = t0;
            for _ in 0..2 {
                let u = one - x * t;
                let d = u * u - y2 * t * t * t;
                let dd = -2.0 * x * u - 3.0 * y2 * t * t;
                if dd.norm() > 0.0 {
                    t -= d / dd;
                }
            }
            let u = one - x * t;
            let ct = 3.0 * t * t + 2.0 * x * u * w;
            let cx = 2.0 * t * u * w;
            let ctt = 6.0 * t - 2.0 * x * x * w;
            let ctx = (2.0 - 4.0 * x * t) * w;
            let dt = -cx / ct;
            let log_a = n1 * t.ln() - ct.ln();
            let dlog_a = n1 * dt / t - (ctt * dt + ctx) / ct;
            (log_a, dlog_a)
        })
    }

    /// `(sum w_k, shift, sum w_k d_k)` with `w_k = a_k exp(-shift)` and the
    /// real shift chosen so the weights stay in range.
    fn weighted(&self, x: C) -> (C, f64, C) {
        let terms = self.residue_terms(x);
        let shift = terms.iter().map(|(l, _)| l.re).fold(f64::NEG_INFINITY, f64::max);
        let mut s = C::new(0.0, 0.0);
        let mut sd = C::new(0.0, 0.0);
        for (l, d) in terms {
            let wk = (l - shift).exp();
            s += wk;
            sd += wk * d;
        }
        (s, shift, sd)
    }
}

impl RootTarget for FamilyMember {
    fn degree(&self) -> usize {
        self.log_abs.len() - 1
    }

    fn deflated_zeros(&self) -> usize {
        self.zeros_at_origin
    }

    fn newton_correction(&self, x: C) -> C {
        let (s, _, sd) = self.weighted(x);
        s / (sd - s * self.zeros_at_origin as f64 / x)
    }

    fn log_monic_value(&self, x: C) -> C {
        // T_n(x, y0) = (1/y0) * sum a_k
        let (s, shift, _) = self.weighted(x);
        s.ln() + shift - self.y0.ln() - self.zeros_at_origin as f64 * x.ln() - self.log_lead
    }

    fn residual(&self, x: C) -> f64 {
        let (s, shift, _) = self.weighted(x);
        let lx = x.norm().ln();
        let log_val = s.norm().ln() + shift - self.y0.norm().ln() - self.zeros_at_origin as f64 * lx;
        let terms: Vec<f64> = self.log_abs.iter().enumerate().map(|(k, l)| l + k as f64 * lx).collect();
        (log_val - log_sum_exp(&terms)).exp()
    }

    fn root_radius(&self) -> f64 {
        tight_cauchy_radius(&self.log_abs)
    }
}
