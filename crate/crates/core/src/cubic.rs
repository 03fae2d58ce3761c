//! Monic complex cubics solved through the chain
//! `beta -> s -> p -> q -> z -> t`: depress, rescale to `q^3 - 3q + beta = 0`,
//! invert the Joukowski map, take cube roots, and map back.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

type C = Complex64;

/// `t^3 + c2 t^2 + c1 t + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cubic {
    pub c2: C,
    pub c1: C,
    pub c0: C,
}

impl Cubic {
    pub fn new(c2: C, c1: C, c0: C) -> Self {
        Self { c2, c1, c0 }
    }

    /// Monic cubic with the given roots.
    pub fn from_roots(a: C, b: C, c: C) -> Self {
        Self::new(-(a + b + c), a * b + b * c + a * c, -(a * b * c))
    }

    pub fn eval(&self, t: C) -> C {
        ((t + self.c2) * t + self.c1) * t + self.c0
    }

    pub fn derivative(&self, t: C) -> C {
        (3.0 * t + 2.0 * self.c2) * t + self.c1
    }

    /// `1 + max |coefficient|`, the yardstick for residuals.
    pub fn scale(&self) -> f64 {
        1.0 + self.c2.norm().max(self.c1.norm()).max(self.c0.norm())
    }
}

/// `t = z + shift` turns the cubic into `z^3 + pcoef z + qcoef`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Depressed {
    pub pcoef: C,
    pub qcoef: C,
    pub shift: C,
}

pub fn depress(c: &Cubic) -> Depressed {
    let (a, b, d) = (c.c2, c.c1, c.c0);
    Depressed {
        pcoef: b - a * a / 3.0,
        qcoef: 2.0 * a * a * a / 27.0 - a * b / 3.0 + d,
        shift: -a / 3.0,
    }
}

/// `lambda = sqrt(-pcoef/3)` (principal) and `beta = qcoef / lambda^3`, so
/// `z = lambda q` gives `q^3 - 3q + beta = 0`.
pub fn chain_params(pcoef: C, qcoef: C) -> Result<(C, C)> {
    if pcoef == C::new(0.0, 0.0) {
        return Err(Error::DegenerateCubic);
    }
    let w = -pcoef / 3.0;
    // `+ 0.0` clears a negative zero so the cut is taken from above.
    let lambda = C::new(w.re, w.im + 0.0).sqrt();
    Ok((lambda, qcoef / (lambda * lambda * lambda)))
}

pub fn joukowski(zeta: C) -> Result<C> {
    if zeta == C::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    Ok(zeta + zeta.inv())
}

/// Solution of `zeta^2 - w zeta + 1 = 0` with `|zeta| >= 1`. On the unit
/// circle both roots qualify and the one with nonnegative imaginary part
/// wins.
pub fn inverse_joukowski(w: C) -> C {
    let d = (w * w - 4.0).sqrt();
    let (a, b) = ((w + d) / 2.0, (w - d) / 2.0);
    let (na, nb) = (a.norm(), b.norm());
    if (na - nb).abs() <= 1e-14 * na.max(nb) {
        if a.im >= b.im {
            a
        } else {
            b
        }
    } else if na > nb {
        a
    } else {
        b
    }
}

/// The three cube roots of `s`, ordered by principal argument.
pub fn cube_root_branches(s: C) -> Result<[C; 3]> {
    if s == C::new(0.0, 0.0) {
        return Err(Error::ZeroInput);
    }
    let m = s.norm().cbrt();
    let a = s.arg();
    let mut out: Vec<(f64, C)> = (0..3)
        .map(|k| {
            let mut th = (a + 2.0 * PI * k as f64) / 3.0;
            if th > PI {
                th -= 2.0 * PI;
            }
            (th, C::from_polar(m, th))
        })
        .collect();
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok([out[0].1, out[1].1, out[2].1])
}

/// Cubic roots ordered by modulus with the tie metadata.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SortedRoots {
    pub t1: C,
    pub t2: C,
    pub t3: C,
    pub tie12: bool,
    pub tie23: bool,
}

impl SortedRoots {
    pub fn as_array(&self) -> [C; 3] {
        [self.t1, self.t2, self.t3]
    }
}

const TIE_TOL: f64 = 1e-12;

fn tie_order(a: &C, b: &C) -> Ordering {
    a.arg().total_cmp(&b.arg()).then(a.im.total_cmp(&b.im))
}

/// Sorts by modulus; moduli within `1e-12 * max modulus` count as equal and
/// are ordered by ascending principal argument, then imaginary part.
pub fn sort_roots(roots: [C; 3]) -> SortedRoots {
    let mut v = roots.to_vec();
    v.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then_with(|| tie_order(a, b)));
    let tol = TIE_TOL * v[2].norm();
    let close = |a: &C, b: &C| (a.norm() - b.norm()).abs() < tol;
    // Re-sort clusters of tied moduli purely by the tie-break.
    let mut start = 0;
    while start < 3 {
        let mut end = start + 1;
        while end < 3 && close(&v[end - 1], &v[end]) {
            end += 1;
        }
        v[start..end].sort_by(tie_order);
        start = end;
    }
    SortedRoots {
        t1: v[0],
        t2: v[1],
        t3: v[2],
        tie12: close(&v[0], &v[1]),
        tie23: close(&v[1], &v[2]),
    }
}

/// Every intermediate value of one pass through the chain. The chain fields
/// are `None` when the depressed cubic has no linear term and the cube-root
/// fallback was used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformalTrace {
    pub cubic: Cubic,
    pub shift: C,
    pub pcoef: C,
    pub qcoef: C,
    pub lambda: Option<C>,
    pub beta: Option<C>,
    pub s_roots: Option<[C; 2]>,
    pub p_branches: Option<[C; 3]>,
    pub q_values: Option<[C; 3]>,
    pub z_values: [C; 3],
    /// `z + shift`, before polishing.
    pub t_roots: [C; 3],
    /// `t_roots` after one Newton step.
    pub polished: [C; 3],
    pub fallback: bool,
    pub max_residual: f64,
}

fn newton_polish(c: &Cubic, t: C) -> C {
    let d = c.derivative(t);
    if d.norm() == 0.0 {
        return t;
    }
    let next = t - c.eval(t) / d;
    if next.is_finite() && c.eval(next).norm() <= c.eval(t).norm() {
        next
    } else {
        t
    }
}

/// Beyond this `|beta|` the cube roots of `s` lose the small `1/p` part to
/// rounding and the cube-root fallback is more accurate.
const BETA_LIMIT: f64 = 1e12;

pub fn solve_chain(c: &Cubic) -> (SortedRoots, ConformalTrace) {
    let d = depress(c);
    let chain = chain_params(d.pcoef, d.qcoef)
        .ok()
        .filter(|&(l, b)| l.is_finite() && b.is_finite() && b.norm() < BETA_LIMIT);
    let (lambda, beta, s_roots, p_branches, q_values, z_values, fallback) = match chain {
        Some((lambda, beta)) => {
            let s = inverse_joukowski(-beta);
            let s_other = s.inv();
            let p = cube_root_branches(s).expect("|s| >= 1");
            let q = p.map(|pk| pk + pk.inv());
            let z = q.map(|qk| lambda * qk);
            (Some(lambda), Some(beta), Some([s, s_other]), Some(p), Some(q), z, false)
        }
        None => {
            let z = if d.qcoef == C::new(0.0, 0.0) {
                // z^3 + P z = 0 with P tiny, or the perfect cube.
                let r = (-d.pcoef).sqrt();
                [C::new(0.0, 0.0), r, -r]
            } else {
                cube_root_branches(-d.qcoef).expect("nonzero")
            };
            (None, None, None, None, None, z, true)
        }
    };
    let t_roots = z_values.map(|z| z + d.shift);
    let polished = t_roots.map(|t| newton_polish(c, t));
    let max_residual = polished.iter().map(|&t| c.eval(t).norm()).fold(0.0, f64::max);
    let trace = ConformalTrace {
        cubic: *c,
        shift: d.shift,
        pcoef: d.pcoef,
        qcoef: d.qcoef,
        lambda,
        beta,
        s_roots,
        p_branches,
        q_values,
        z_values,
        t_roots,
        polished,
        fallback,
        max_residual,
    };
    (sort_roots(polished), trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalPoints {
    pub points: [C; 2],
    /// Some critical point is also a root of the cubic.
    pub double_root: bool,
    /// Both critical points coincide and are a root.
    pub triple_root: bool,
}

pub fn critical_points(c: &Cubic) -> CriticalPoints {
    let disc = (4.0 * c.c2 * c.c2 - 12.0 * c.c1).sqrt();
    let points = [(-2.0 * c.c2 + disc) / 6.0, (-2.0 * c.c2 - disc) / 6.0];
    let tol = 1e-10 * c.scale();
    let is_root = |t: C| c.eval(t).norm() < tol;
    let double_root = points.iter().any(|&t| is_root(t));
    let coincide = (points[0] - points[1]).norm() < 1e-7 * c.scale();
    CriticalPoints {
        points,
        double_root,
        triple_root: double_root && coincide,
    }
}

fn derivatives_at_roots(roots: &SortedRoots, c: &Cubic) -> Result<[C; 3]> {
    let d = roots.as_array().map(|t| c.derivative(t));
    let tol = 1e-12 * c.scale();
    if let Some(bad) = d.iter().find(|v| v.norm() < tol) {
        return Err(Error::RepeatedRoot { derivative: bad.norm() });
    }
    Ok(d)
}

/// `sum_k t_k^(1-n) / c'(t_k)`.
pub fn tau_explicit(n: usize, roots: &SortedRoots, c: &Cubic) -> Result<C> {
    let d = derivatives_at_roots(roots, c)?;
    let e = 1 - n as i32;
    Ok(roots
        .as_array()
        .iter()
        .zip(d.iter())
        .map(|(&t, &dt)| t.powi(e) / dt)
        .sum())
}

/// `tau * t1^(n-1) * c'(t1)` for the smallest-modulus root `t1`, whose
/// residue dominates `t^(1-n)` as `n` grows; tends to 1 when `|t1| < |t2|`.
pub fn asym_factor(n: usize, roots: &SortedRoots, c: &Cubic, tau: C) -> Result<C> {
    let d = derivatives_at_roots(roots, c)?;
    Ok(tau * roots.t1.powi(n as i32 - 1) * d[0])
}

/// Monic form of `(1 - x t)^2 - y0^2 t^3 = 0`.
pub fn family_cubic(x: C, y0: C) -> Result<Cubic> {
    if y0 == C::new(0.0, 0.0) {
        return Err(Error::ZeroY);
    }
    let w = (y0 * y0).inv();
    Ok(Cubic::new(-x * x * w, 2.0 * x * w, -w))
}

/// Semi-axes of the image of `|zeta| = r` under the Joukowski map.
pub fn ellipse_params(r: f64) -> (f64, f64) {
    (r + r.recip(), (r - r.recip()).abs())
}

/// `t^3 - (1 - t)^2`, expanded.
pub fn p_cubic() -> Cubic {
    Cubic::new(C::new(-1.0, 0.0), C::new(2.0, 0.0), C::new(-1.0, 0.0))
}
