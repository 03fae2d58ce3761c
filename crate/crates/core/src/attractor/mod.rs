//! The tie locus `A = { |t1(x)| = |t2(x)| }` of the characteristic cubic
//! `(1 - x t)^2 = y0^2 t^3`, its `p`-plane description, and numeric checks of
//! how the zeros of `T_n(x, y0)` approach it.

mod pplane;
mod report;
mod trace;
mod xplane;

pub use pplane::{
    branch_images, distance_to_locus, gamma_region, gamma_region_as_printed, l_set, locus_to_beta,
    normalize_angle, pplane_image, pplane_locus, pplane_modulus_sq, GammaRegion, LambdaBranch, LocusSpec,
    ModulusSq, PPlanePoint,
};
pub use report::{convergence_report, ConvergenceReport, ReportRow, SUBSTITUTION_NOTE};
pub use trace::{trace_attractor, AttractorCurve, CurveSample};
pub use xplane::{
    beta_of_x, claim_diagnostic, disc_bound, family_zeros, pullback_x, region_b, tie_residual, ClaimStats,
    DiscBound,
};

use serde::Serialize;

use num_complex::Complex64;

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Self { re_min, re_max, im_min, im_max }
    }

    pub fn square(half: f64) -> Self {
        Self::new(-half, half, -half, half)
    }

    pub fn is_empty(&self) -> bool {
        !(self.re_min < self.re_max && self.im_min < self.im_max)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

impl Default for Window {
    fn default() -> Self {
        Self::square(2.0)
    }
}
