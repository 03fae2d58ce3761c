//! Distances between the zeros of `T_n(x, y0)` and a traced curve.

use num_complex::Complex64;
use serde::Serialize;

use super::trace::AttractorCurve;
use super::xplane::tie_residual;
use crate::error::{Error, Result};
use crate::rootfinder::{aberth_roots, FamilyMember};

type C = Complex64;

pub const SUBSTITUTION_NOTE: &str =
    "zeros are those of T_n(x, y0) in x; tau_n = T_n(x, x^(3/2)) does not depend on x and is not used";

/// Margin used for the region-B exclusion count.
pub const REGION_B_MARGIN: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub zero_count: usize,
    pub zeros_in_window: usize,
    /// Largest distance from a zero inside the window to the curve samples.
    pub eps_out: f64,
    /// Largest distance from a curve sample to the zero set.
    pub eps_in: f64,
    pub max_zero_modulus: f64,
    pub rho_cauchy: f64,
    /// Zeros with `|t2| - |t1| > 0.2 |t3|`.
    pub region_b_hits: usize,
    pub max_residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub y0: C,
    pub curve_samples: usize,
    pub rows: Vec<ReportRow>,
    pub eps_out_non_increasing: bool,
    pub eps_in_non_increasing: bool,
    pub verdict: String,
    pub note: String,
}

fn nearest(z: C, set: &[C]) -> f64 {
    set.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
}

/// Non-increasing over the tail that starts at index `(len - 1) / 2`.
fn tail_non_increasing(v: &[f64]) -> bool {
    let start = v.len().saturating_sub(1) / 2;
    v[start..].windows(2).all(|w| w[1] <= w[0])
}

/// Zeros and curve are compared point to point, so the distances carry a
/// bias up to half the sample spacing. Only zeros inside the curve's window
/// count towards `eps_out`.
pub fn convergence_report(n_list: &[usize], curve: &AttractorCurve, y0: C) -> Result<ConvergenceReport> {
    if curve.is_empty() {
        return Err(Error::EmptyCurve);
    }
    if let Some(&n) = n_list.iter().find(|&&n| n < 4) {
        return Err(Error::InvalidArgument(format!("report needs n >= 4, got {n}")));
    }
    let samples: Vec<C> = curve.points().collect();
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let fm = FamilyMember::new(n, y0)?;
        let zs = aberth_roots(&fm, 1e-10, 5000);
        let zeros = zs.all_roots();
        let inside: Vec<C> = zeros.iter().copied().filter(|z| curve.window.contains(*z)).collect();
        let eps_out = inside.iter().map(|&z| nearest(z, &samples)).fold(0.0, f64::max);
        let eps_in = samples.iter().map(|&s| nearest(s, &zeros)).fold(0.0, f64::max);
        let logs = fm.log_coefficients();
        let lead = *logs.last().expect("nonempty");
        let top = logs[..logs.len() - 1].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut region_b_hits = 0;
        for &z in &zeros {
            let (gap, t3) = tie_residual(z, y0)?;
            if gap > REGION_B_MARGIN * t3 {
                region_b_hits += 1;
            }
        }
        rows.push(ReportRow {
            n,
            zero_count: zeros.len(),
            zeros_in_window: inside.len(),
            eps_out,
            eps_in,
            max_zero_modulus: zeros.iter().map(|z| z.norm()).fold(0.0, f64::max),
            rho_cauchy: 1.0 + (top - lead).exp(),
            region_b_hits,
            max_residual: zs.max_residual(),
            converged: zs.converged,
        });
    }
    let outs: Vec<f64> = rows.iter().map(|r| r.eps_out).collect();
    let ins: Vec<f64> = rows.iter().map(|r| r.eps_in).collect();
    let eps_out_non_increasing = tail_non_increasing(&outs);
    let eps_in_non_increasing = tail_non_increasing(&ins);
    let verdict = if eps_out_non_increasing && eps_in_non_increasing {
        "consistent with attractor"
    } else {
        "not established"
    };
    Ok(ConvergenceReport {
        y0,
        curve_samples: samples.len(),
        rows,
        eps_out_non_increasing,
        eps_in_non_increasing,
        verdict: verdict.into(),
        note: SUBSTITUTION_NOTE.into(),
    })
}
