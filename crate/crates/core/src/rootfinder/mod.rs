//! Simultaneous root finders (Aberth–Ehrlich and Durand–Kerner) over any
//! polynomial that can report its Newton correction and a log-scaled value.

mod family;
mod numeric;

pub use family::{structural_zero_order, FamilyMember};
pub use numeric::{exact_to_numeric, tight_cauchy_radius, NumericUniPoly};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

type C = Complex64;

/// What a simultaneous iteration needs from a polynomial `p` of the given
/// degree (after any zero roots were split off).
pub trait RootTarget: Sync {
    fn degree(&self) -> usize;
    /// Roots at the origin already removed from `p`.
    fn deflated_zeros(&self) -> usize;
    /// `p(z) / p'(z)`.
    fn newton_correction(&self, z: C) -> C;
    /// `ln(p(z) / leading coefficient)`, any branch.
    fn log_monic_value(&self, z: C) -> C;
    /// `|p(z)| / sum |c_k| |z|^k`.
    fn residual(&self, z: C) -> f64;
    /// Positive root of the Cauchy polynomial; every root lies inside it.
    fn root_radius(&self) -> f64;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroSet {
    /// Degree including the split-off roots at zero.
    pub degree: usize,
    pub deflated_zeros: usize,
    pub roots: Vec<C>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl ZeroSet {
    /// Roots with the zero roots reinstated.
    pub fn all_roots(&self) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.deflated_zeros];
        v.extend_from_slice(&self.roots);
        v
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn initial_guesses(deg: usize, radius: f64, offset: f64) -> Vec<C> {
    let r = if radius > 0.0 && radius.is_finite() { radius } else { 1.0 };
    (0..deg)
        .map(|k| C::from_polar(r, 2.0 * PI * k as f64 / deg as f64 + offset))
        .collect()
}

fn finish<T: RootTarget + ?Sized>(p: &T, mut roots: Vec<C>, iterations: usize, converged: bool) -> ZeroSet {
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    let residuals = roots.par_iter().map(|&z| p.residual(z)).collect();
    ZeroSet {
        degree: p.degree() + p.deflated_zeros(),
        deflated_zeros: p.deflated_zeros(),
        roots,
        residuals,
        iterations,
        converged,
    }
}

fn small(w: C, z: C, tol: f64) -> bool {
    w.norm() <= tol * z.norm().max(1.0)
}

fn iterate<T, F>(p: &T, mut z: Vec<C>, tol: f64, max_iter: usize, step: F) -> ZeroSet
where
    T: RootTarget + ?Sized,
    F: Fn(&T, &[C], usize) -> C + Sync,
{
    if z.is_empty() {
        return finish(p, z, 0, true);
    }
    for it in 1..=max_iter {
        let w: Vec<C> = (0..z.len()).into_par_iter().map(|k| step(p, &z, k)).collect();
        let mut done = true;
        for (zk, wk) in z.iter_mut().zip(&w) {
            if wk.is_finite() {
                if !small(*wk, *zk, tol) {
                    done = false;
                }
                *zk -= wk;
            } else {
                done = false;
            }
        }
        if done {
            return finish(p, z, it, true);
        }
    }
    finish(p, z, max_iter, false)
}

fn aberth_step<T: RootTarget + ?Sized>(p: &T, z: &[C], k: usize) -> C {
    let n = p.newton_correction(z[k]);
    if n == C::new(0.0, 0.0) {
        return n;
    }
    let s: C = z
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, &zj)| (z[k] - zj).inv())
        .sum();
    n / (C::new(1.0, 0.0) - n * s)
}

fn dk_step<T: RootTarget + ?Sized>(p: &T, z: &[C], k: usize) -> C {
    let logs: C = z
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, &zj)| (z[k] - zj).ln())
        .sum();
    (p.log_monic_value(z[k]) - logs).exp()
}

/// Aberth–Ehrlich with a Jacobi sweep, started on the circle of radius
/// `0.8 * root_radius` at angles `2 pi k / d + 0.4`. Converged when every
/// correction is at most `tol * max(1, |z|)`.
pub fn aberth_roots<T: RootTarget + ?Sized>(p: &T, tol: f64, max_iter: usize) -> ZeroSet {
    let z = initial_guesses(p.degree(), 0.8 * p.root_radius(), 0.4);
    iterate(p, z, tol, max_iter, aberth_step)
}

/// Durand–Kerner (Weierstrass) iteration started at radius
/// `1.1 * root_radius` with angle offset 0.7.
pub fn durand_kerner_roots<T: RootTarget + ?Sized>(p: &T, tol: f64, max_iter: usize) -> ZeroSet {
    let z = initial_guesses(p.degree(), 1.1 * p.root_radius(), 0.7);
    iterate(p, z, tol, max_iter, dk_step)
}

/// Largest normalised residual over the zero set, recomputed from `p`.
pub fn residual_check<T: RootTarget + ?Sized>(p: &T, z: &ZeroSet) -> f64 {
    z.roots.iter().map(|&r| p.residual(r)).fold(0.0, f64::max)
}

/// Pairing of `a` onto `b` minimising the total distance (Hungarian method);
/// `result[i]` is the index in `b` matched with `a[i]`.
pub fn optimal_pairing(a: &[C], b: &[C]) -> Vec<usize> {
    let n = a.len();
    assert_eq!(n, b.len(), "pairing needs equal sizes");
    // 1-based potentials formulation.
    let cost = |i: usize, j: usize| (a[i - 1] - b[j - 1]).norm();
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; n];
    for j in 1..=n {
        out[owner[j] - 1] = j - 1;
    }
    out
}

/// Largest pair distance under the optimal pairing; infinite when the sizes
/// differ.
pub fn multiset_distance(a: &[C], b: &[C]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let pair = optimal_pairing(a, b);
    a.iter().zip(&pair).map(|(x, &j)| (x - b[j]).norm()).fold(0.0, f64::max)
}

/// Coefficients of `prod (x - r)`, lowest degree first.
pub fn poly_from_roots(roots: &[C]) -> Vec<C> {
    let mut c = vec![C::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= r * ck;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactUniPoly;

    fn re(v: f64) -> C {
        C::new(v, 0.0)
    }

    #[test]
    fn quadratic_both_methods() {
        let p = NumericUniPoly::from_reals(&[-1.0, 0.0, 1.0]).unwrap();
        for z in [aberth_roots(&p, 1e-12, 100), durand_kerner_roots(&p, 1e-12, 100)] {
            assert!(z.converged);
            assert!(multiset_distance(&z.roots, &[re(-1.0), re(1.0)]) < 1e-12);
            assert!(residual_check(&p, &z) < 1e-15);
        }
    }

    #[test]
    fn t5_roots() {
        let p = exact_to_numeric(&ExactUniPoly::from_ints(&[1, 0, 0, 4])).unwrap();
        let z = aberth_roots(&p, 1e-12, 200);
        let want = [re(-0.6299605), C::new(0.3149803, 0.5455618), C::new(0.3149803, -0.5455618)];
        assert!(multiset_distance(&z.roots, &want) < 1e-6);
        assert!(z.max_residual() <= 1e-12 * 10.0);
        // A nudged root shows up in the residual.
        let mut moved = z.clone();
        moved.roots[0] += 1e-3;
        assert!(residual_check(&p, &moved) > 1e-4);
    }

    #[test]
    fn linear_closed_form() {
        let p = NumericUniPoly::from_reals(&[3.0, 2.0]).unwrap();
        let z = durand_kerner_roots(&p, 1e-14, 50);
        assert!((z.roots[0] - re(-1.5)).norm() < 1e-15);
    }

    #[test]
    fn zero_roots_are_counted() {
        let p = exact_to_numeric(&ExactUniPoly::from_ints(&[0, 0, 3])).unwrap();
        let z = aberth_roots(&p, 1e-12, 10);
        assert_eq!((z.degree, z.deflated_zeros, z.roots.len()), (2, 2, 0));
        assert_eq!(z.all_roots(), vec![re(0.0), re(0.0)]);
    }

    #[test]
    fn non_convergence_is_reported() {
        let p = NumericUniPoly::from_reals(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let z = aberth_roots(&p, 1e-15, 1);
        assert!(!z.converged);
        assert_eq!(z.roots.len(), 5);
    }

    #[test]
    fn pairing_finds_permutation() {
        let a = [re(0.0), re(1.0), re(2.0), C::new(0.0, 5.0)];
        let b = [C::new(0.0, 5.0), re(2.0), re(0.0), re(1.0)];
        assert_eq!(optimal_pairing(&a, &b), vec![2, 3, 1, 0]);
        assert_eq!(multiset_distance(&a, &b), 0.0);
        assert_eq!(multiset_distance(&a, &b[..3]), f64::INFINITY);
    }

    #[test]
    fn deterministic_output() {
        let p = NumericUniPoly::from_reals(&[1.0, -3.0, 0.5, 2.0, 0.0, 1.0, -0.25]).unwrap();
        let a = aberth_roots(&p, 1e-12, 500);
        let b = aberth_roots(&p, 1e-12, 500);
        assert_eq!(a, b);
    }
}
