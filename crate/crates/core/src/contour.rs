//! Trapezoidal evaluation of the Cauchy integrals for `T_n(x, y)` and
//! `tau_n`, used as a floating-point oracle independent of the exact layer.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Circle `|t| = radius` and the starting node count for the trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    pub radius: f64,
    pub nodes: usize,
}

pub const MIN_NODES: usize = 16;
pub const MAX_NODES: usize = 1 << 20;
const BOUND_SAMPLES: usize = 4096;
const DENOMINATOR_FLOOR: f64 = 0.9;
/// Smallest zero of `t^3 - (1 - t)^2` is about 0.5698.
pub const TAU_RADIUS_LIMIT: f64 = 0.56;

impl ContourSpec {
    pub fn new(radius: f64) -> Self {
        Self { radius, nodes: MIN_NODES }
    }
}

/// `(1 - x t)^2 - y^2 t^3`
pub fn denominator(x: Complex64, y: Complex64, t: Complex64) -> Complex64 {
    let a = Complex64::new(1.0, 0.0) - x * t;
    a * a - y * y * t * t * t
}

fn circle_point(radius: f64, k: usize, m: usize) -> Complex64 {
    Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64)
}

fn min_on_circle(x: Complex64, y: Complex64, radius: f64) -> f64 {
    (0..BOUND_SAMPLES)
        .map(|k| denominator(x, y, circle_point(radius, k, BOUND_SAMPLES)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Largest `2^-k`, `k = 0..=40`, on which the denominator stays at least 0.9
/// in modulus over 4096 samples.
///
/// The ladder is climbed from the smallest circle outward and stops at the
/// first rung that fails, so a large circle that clears the bound while
/// already enclosing poles is never returned.
pub fn choose_radius(x: Complex64, y: Complex64) -> Result<ContourSpec> {
    let ok = |r: f64| min_on_circle(x, y, r) >= DENOMINATOR_FLOOR && winding_number(x, y, r) == Some(0);
    let mut best = None;
    for k in (0..=40).rev() {
        let r = 2f64.powi(-k);
        if !ok(r) {
            break;
        }
        best = Some(r);
    }
    best.map(ContourSpec::new).ok_or(Error::NoValidRadius)
}

/// Winding number of the denominator around 0 along `|t| = radius`, or
/// `None` when the sampled phase jumps too far between neighbours to be
/// trusted.
fn winding_number(x: Complex64, y: Complex64, radius: f64) -> Option<i64> {
    let m = BOUND_SAMPLES;
    let mut total = 0.0;
    let mut prev = denominator(x, y, circle_point(radius, 0, m));
    for k in 1..=m {
        let cur = denominator(x, y, circle_point(radius, k % m, m));
        if cur.norm() == 0.0 || prev.norm() == 0.0 {
            return None;
        }
        let d = (cur / prev).arg();
        if d.abs() > PI / 4.0 {
            return None;
        }
        total += d;
        prev = cur;
    }
    Some((total / (2.0 * PI)).round() as i64)
}

/// Widest circle that still encloses no zero of the denominator, backed off
/// by one rung of the ladder `2^(k/4)`, `k = 24 ..= -160`.
///
/// Small circles make the trapezoid sum cancel catastrophically for larger
/// `n` (the integrand grows like `radius^(2-n)` while the result scales like
/// the inverse n-th power of the nearest pole), so this radius is what the
/// oracle uses in practice.
pub fn widest_radius(x: Complex64, y: Complex64) -> Result<ContourSpec> {
    let rung = |k: i32| 2f64.powf(k as f64 / 4.0);
    let first_free = (-160..=24)
        .rev()
        .find(|&k| winding_number(x, y, rung(k)) == Some(0))
        .ok_or(Error::NoValidRadius)?;
    let k = if first_free == 24 { 24 } else { first_free - 1 };
    Ok(ContourSpec::new(rung(k)))
}

/// Pairwise (cascade) sum; deterministic for a fixed input order.
pub fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Mean of `f(t) t^(2-n)` over `m` equispaced nodes on the circle, which is
/// the trapezoid rule for `1/(2 pi i) * integral f(t) t^(1-n) dt`.
fn trapezoid<F>(f: &F, n: usize, radius: f64, m: usize) -> (Complex64, f64)
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let vals: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|k| {
            let t = circle_point(radius, k, m);
            f(t) * t.powi(2 - n as i32)
        })
        .collect();
    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    (pairwise_sum(&vals) / m as f64, scale)
}

fn converge<F>(f: F, n: usize, spec: &ContourSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut m = spec.nodes.max(MIN_NODES);
    let (mut prev, _) = trapezoid(&f, n, spec.radius, m);
    loop {
        m *= 2;
        if m > MAX_NODES {
            return Err(Error::NonConvergence { nodes: m / 2 });
        }
        let (cur, scale) = trapezoid(&f, n, spec.radius, m);
        let diff = (cur - prev).norm();
        // The floor handles integrals whose exact value is zero.
        if diff <= 1e-10 * cur.norm() || diff <= 1e-15 * scale {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// `T_n(x, y)` for the `(2,1,1)` family from its Cauchy integral.
pub fn contour_term(x: Complex64, y: Complex64, n: usize, spec: &ContourSpec) -> Result<Complex64> {
    converge(|t| y / denominator(x, y, t), n, spec)
}

/// `tau_n` from the integral of `-1 / P(t)` with `P(t) = t^3 - (1 - t)^2`.
pub fn contour_tau(n: usize, spec: &ContourSpec) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("contour_tau needs n >= 2, got {n}")));
    }
    if spec.radius >= TAU_RADIUS_LIMIT {
        return Err(Error::RadiusTooLarge { radius: spec.radius });
    }
    let one = Complex64::new(1.0, 0.0);
    converge(
        |t| {
            let u = one - t;
            -one / (t * t * t - u * u)
        },
        n,
        spec,
    )
}
