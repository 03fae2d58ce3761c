//! The `x`-plane side: the `beta` image of `x`, its inverse, and the region
//! and disc diagnostics on the zeros of `T_n(x, y0)`.

use num_complex::Complex64;
use serde::Serialize;

use super::Window;
use crate::cubic::{chain_params, depress, family_cubic, solve_chain};
use crate::error::{Error, Result};
use crate::rootfinder::{aberth_roots, FamilyMember, NumericUniPoly, RootTarget, ZeroSet};

type C = Complex64;

/// `beta` of the depressed family cubic at `x`, principal `lambda`.
pub fn beta_of_x(x: C, y0: C) -> Result<C> {
    let d = depress(&family_cubic(x, y0)?);
    Ok(chain_params(d.pcoef, d.qcoef)?.1)
}

fn poly_mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &u) in a.iter().enumerate() {
        for (j, &v) in b.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    out
}

fn poly_eval(c: &[C], x: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, &v| acc * x + v)
}

fn poly_deriv(c: &[C]) -> Vec<C> {
    c.iter().enumerate().skip(1).map(|(k, &v)| v * k as f64).collect()
}

/// Coefficients (lowest first) of the depressed cubic's `pcoef(x)` and
/// `qcoef(x)`.
fn depressed_polys(y0: C) -> (Vec<C>, Vec<C>) {
    let w = (y0 * y0).inv();
    let z = C::new(0.0, 0.0);
    let p = vec![z, 2.0 * w, z, z, -w * w / 3.0];
    let q = vec![-w, z, z, 2.0 * w * w / 3.0, z, z, -2.0 * w * w * w / 27.0];
    (p, q)
}

/// Newton on the squared equation `f`, kept only while `|f|` decreases.
fn polish(mut x: C, f: &[C]) -> C {
    let df = poly_deriv(f);
    let mut fx = poly_eval(f, x).norm();
    for _ in 0..20 {
        let d = poly_eval(&df, x);
        if d.norm() == 0.0 {
            break;
        }
        let y = x - poly_eval(f, x) / d;
        let fy = poly_eval(f, y).norm();
        if fy.is_nan() || fy >= fx {
            break;
        }
        x = y;
        fx = fy;
    }
    x
}

/// `|beta(x) - target|`, reading `-P/3` within rounding of the negative real
/// axis as lying on it, as `beta_of_x` does for exact inputs.
fn beta_residual(x: C, target: C, p: &[C], q: &[C]) -> f64 {
    let w = -poly_eval(p, x) / 3.0;
    if w.norm() == 0.0 {
        return f64::INFINITY;
    }
    let im = if w.im.abs() <= 1e-12 * w.norm() { 0.0 } else { w.im };
    let lam = C::new(w.re, im).sqrt();
    (poly_eval(q, x) / (lam * lam * lam) - target).norm()
}

/// Every `x` in `window` with `beta_of_x(x, y0) = beta_target` to `1e-8`.
///
/// Squaring `beta lambda^3 = Q` with `lambda^2 = -P/3` gives the degree-12
/// equation `beta^2 P^3 + 27 Q^2 = 0`; its roots are Newton-polished and the
/// ones belonging to `-beta_target` dropped.
pub fn pullback_x(beta_target: C, y0: C, window: &Window) -> Result<Vec<C>> {
    if window.is_empty() {
        return Ok(Vec::new());
    }
    if y0 == C::new(0.0, 0.0) {
        return Err(Error::ZeroY);
    }
    let (p, q) = depressed_polys(y0);
    let p3 = poly_mul(&poly_mul(&p, &p), &p);
    let q2 = poly_mul(&q, &q);
    let b2 = beta_target * beta_target;
    let mut f: Vec<C> = p3.iter().zip(&q2).map(|(&a, &b)| b2 * a + 27.0 * b).collect();
    let big = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while f.len() > 1 && f.last().unwrap().norm() <= 1e-13 * big {
        f.pop();
    }
    let poly = NumericUniPoly::new(f.clone())?;
    let mut cands = vec![C::new(0.0, 0.0); poly.zero_multiplicity()];
    if poly.degree() > 0 {
        cands.extend(aberth_roots(&poly, 1e-13, 2000).roots);
    }
    let mut out: Vec<C> = Vec::new();
    for c in cands {
        let x = polish(c, &f);
        if beta_residual(x, beta_target, &p, &q) > 1e-8 || !window.contains(x) {
            continue;
        }
        if out.iter().all(|o| (o - x).norm() > 1e-7 * x.norm().max(1.0)) {
            out.push(x);
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// `|t2(x)| - |t1(x)|` and `|t3(x)|` for the family cubic.
pub fn tie_residual(x: C, y0: C) -> Result<(f64, f64)> {
    let (r, _) = solve_chain(&family_cubic(x, y0)?);
    Ok((r.t2.norm() - r.t1.norm(), r.t3.norm()))
}

/// `|t2| - |t1| > margin |t3|`.
pub fn region_b(x: C, y0: C, margin: f64) -> Result<bool> {
    let (gap, t3) = tie_residual(x, y0)?;
    Ok(gap > margin * t3)
}

/// Zeros of `T_n(x, y0)` by Aberth iteration on the residue evaluator.
pub fn family_zeros(n: usize, y0: C) -> Result<ZeroSet> {
    let fm = FamilyMember::new(n, y0)?;
    Ok(aberth_roots(&fm, 1e-10, 5000))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscBound {
    pub n: usize,
    /// `1 + max_k |c_k / c_deg|`.
    pub rho_cauchy: f64,
    pub max_zero_modulus: f64,
}

pub fn disc_bound(n: usize, y0: C) -> Result<DiscBound> {
    let fm = FamilyMember::new(n, y0)?;
    let logs = fm.log_coefficients();
    let lead = *logs.last().expect("nonempty");
    let top = logs[..logs.len() - 1].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rho_cauchy = 1.0 + (top - lead).exp();
    let zs = aberth_roots(&fm, 1e-10, 5000);
    let max_zero_modulus = zs.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(DiscBound { n, rho_cauchy, max_zero_modulus })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimStats {
    pub n: usize,
    /// `|y0^2 + x_k^3|` over the nonzero zeros.
    pub values: Vec<f64>,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

pub fn claim_diagnostic(n: usize, y0: C) -> Result<ClaimStats> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("claim diagnostic needs n >= 5, got {n}")));
    }
    let zs = family_zeros(n, y0)?;
    let y2 = y0 * y0;
    let values: Vec<f64> = zs.roots.iter().map(|x| (y2 + x * x * x).norm()).collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(0.0, f64::max);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    Ok(ClaimStats { n, values, min, mean, max })
}
