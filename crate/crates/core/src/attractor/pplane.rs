//! Loci in the `p`-plane (the cube roots of the Joukowski preimage) on which
//! two of the three images `t = lambda J(p) + 1/3` have equal modulus.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

type C = Complex64;

const SQRT5: f64 = 2.23606797749979;
const SQRT6: f64 = 2.449489742783178;
const SQRT15: f64 = 3.872983346207417;

/// Which square root of `-5/9` plays `lambda` in `z = lambda q`.
///
/// With `Conjugate` (`lambda = -i sqrt5/3`) the equal-modulus circle is
/// centred at `(-sqrt15/2, sqrt5/2)`; with `Principal` (`+i sqrt5/3`) it is
/// the reflection through the origin, `(sqrt15/2, -sqrt5/2)`. Both give the
/// same rays.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum LambdaBranch {
    Principal,
    #[default]
    Conjugate,
}

impl LambdaBranch {
    pub fn lambda(self) -> C {
        let l = C::new(0.0, SQRT5 / 3.0);
        match self {
            LambdaBranch::Principal => l,
            LambdaBranch::Conjugate => l.conj(),
        }
    }

    fn sigma(self) -> f64 {
        match self {
            LambdaBranch::Principal => 1.0,
            LambdaBranch::Conjugate => -1.0,
        }
    }

    /// Centre of the circle on which branches `theta` and `theta + 4pi/3`
    /// tie.
    pub fn tie_circle_center(self) -> (f64, f64) {
        let s = self.sigma();
        (s * SQRT15 / 2.0, -s * SQRT5 / 2.0)
    }

    /// Centre of the circle separating `|t1| < |t3|` from `|t1| > |t3|`, and
    /// whether the `cos(theta + pi/3) > 0` half needs points outside it.
    fn order_circle(self) -> ((f64, f64), bool) {
        match self {
            LambdaBranch::Conjugate => ((SQRT15 / 2.0, SQRT5 / 2.0), true),
            LambdaBranch::Principal => ((-SQRT15 / 2.0, -SQRT5 / 2.0), false),
        }
    }
}

/// `p = r e^(i theta)` with `theta` in `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PPlanePoint {
    pub r: f64,
    pub theta: f64,
}

pub fn normalize_angle(a: f64) -> f64 {
    let mut t = a % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

impl PPlanePoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta: normalize_angle(theta) }
    }

    pub fn from_complex(p: C) -> Self {
        Self { r: p.norm(), theta: p.arg() }
    }

    pub fn to_complex(self) -> C {
        C::from_polar(self.r, self.theta)
    }

    pub fn rotate(self, a: f64) -> Self {
        Self::new(self.r, self.theta + a)
    }
}

/// `t = lambda (p + 1/p) + 1/3`.
pub fn pplane_image(p: C, branch: LambdaBranch) -> C {
    branch.lambda() * (p + p.inv()) + 1.0 / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModulusSq {
    pub closed_form: f64,
    pub direct: f64,
}

/// `|t|^2` for the image of `pt`, from the trigonometric closed form and from
/// the mapped point itself.
pub fn pplane_modulus_sq(pt: PPlanePoint, branch: LambdaBranch) -> ModulusSq {
    let (r, th) = (pt.r, pt.theta);
    let closed_form = 5.0 / 9.0 * (r * r + 1.0 / (r * r))
        + 10.0 / 9.0 * (2.0 * th).cos()
        + 1.0 / 9.0
        + branch.sigma() * 2.0 * SQRT5 / 9.0 * (1.0 / r - r) * th.sin();
    ModulusSq {
        closed_form,
        direct: pplane_image(pt.to_complex(), branch).norm_sqr(),
    }
}

/// Images of the three branches `theta0`, `theta0 + 4pi/3`, `theta0 + 2pi/3`
/// (labelled `t1`, `t2`, `t3`).
pub fn branch_images(pt: PPlanePoint, branch: LambdaBranch) -> [C; 3] {
    [0.0, 4.0 * PI / 3.0, 2.0 * PI / 3.0].map(|a| pplane_image(pt.rotate(a).to_complex(), branch))
}

/// A piece of a locus, restricted to `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LocusSpec {
    /// `{ r e^(i angle) : r_min <= r <= r_max }`; `r_max` may be infinite.
    Ray { angle: f64, r_min: f64, r_max: f64 },
    /// `{ center + radius e^(i phi) : phi_start <= phi <= phi_end }`.
    Arc { center: (f64, f64), radius: f64, phi_start: f64, phi_end: f64 },
}

impl LocusSpec {
    fn ray(angle: f64) -> Self {
        LocusSpec::Ray { angle: normalize_angle(angle), r_min: 1.0, r_max: f64::INFINITY }
    }

    /// The part of a circle lying in `|p| >= 1`, as one angular window.
    fn clipped_circle(center: (f64, f64), radius: f64) -> Self {
        let c = C::new(center.0, center.1);
        let d = c.norm();
        // |c + R e^(i phi)|^2 >= 1  <=>  cos(phi - arg c) >= (1 - d^2 - R^2) / (2 d R)
        let k = ((1.0 - d * d - radius * radius) / (2.0 * d * radius)).clamp(-1.0, 1.0);
        let half = k.acos();
        LocusSpec::Arc { center, radius, phi_start: c.arg() - half, phi_end: c.arg() + half }
    }

    pub fn point_at(&self, s: f64) -> C {
        match *self {
            LocusSpec::Ray { angle, .. } => C::from_polar(s, angle),
            LocusSpec::Arc { center, radius, .. } => C::new(center.0, center.1) + C::from_polar(radius, s),
        }
    }

    /// Parameter range; an infinite ray is cut at `r_min + ray_span`.
    pub fn param_range(&self, ray_span: f64) -> (f64, f64) {
        match *self {
            LocusSpec::Ray { r_min, r_max, .. } => (r_min, r_max.min(r_min + ray_span)),
            LocusSpec::Arc { phi_start, phi_end, .. } => (phi_start, phi_end),
        }
    }

    /// `count` evenly spaced points (interior of the parameter range).
    pub fn sample(&self, count: usize, ray_span: f64) -> Vec<PPlanePoint> {
        let (a, b) = self.param_range(ray_span);
        (0..count)
            .map(|k| {
                let s = a + (b - a) * (k as f64 + 0.5) / count as f64;
                PPlanePoint::from_complex(self.point_at(s))
            })
            .collect()
    }

    /// Euclidean distance from `p` to this piece.
    pub fn distance(&self, p: C) -> f64 {
        match *self {
            LocusSpec::Ray { angle, r_min, r_max } => {
                let u = C::from_polar(1.0, angle);
                let s = (p * u.conj()).re.clamp(r_min, r_max);
                (p - u * s).norm()
            }
            LocusSpec::Arc { center, radius, phi_start, phi_end } => {
                let c = C::new(center.0, center.1);
                let phi = (p - c).arg();
                let mid = 0.5 * (phi_start + phi_end);
                let rel = normalize_angle(phi - mid);
                let half = 0.5 * (phi_end - phi_start);
                if rel.abs() <= half {
                    ((p - c).norm() - radius).abs()
                } else {
                    let e1 = c + C::from_polar(radius, phi_start);
                    let e2 = c + C::from_polar(radius, phi_end);
                    (p - e1).norm().min((p - e2).norm())
                }
            }
        }
    }

    pub fn rotated(&self, a: f64) -> Self {
        match *self {
            LocusSpec::Ray { angle, r_min, r_max } => {
                LocusSpec::Ray { angle: normalize_angle(angle + a), r_min, r_max }
            }
            LocusSpec::Arc { center, radius, phi_start, phi_end } => {
                let c = C::new(center.0, center.1) * C::from_polar(1.0, a);
                LocusSpec::Arc { center: (c.re, c.im), radius, phi_start: phi_start + a, phi_end: phi_end + a }
            }
        }
    }
}

/// Rays `theta = -pi/6`, `theta = -7pi/6` and the tie circle of radius
/// `sqrt 6`, all clipped to `r >= 1`.
pub fn pplane_locus(branch: LambdaBranch) -> Vec<LocusSpec> {
    vec![
        LocusSpec::ray(-PI / 6.0),
        LocusSpec::ray(-7.0 * PI / 6.0),
        LocusSpec::clipped_circle(branch.tie_circle_center(), SQRT6),
    ]
}

pub fn distance_to_locus(p: C, branch: LambdaBranch) -> f64 {
    pplane_locus(branch).iter().map(|l| l.distance(p)).fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaRegion {
    Gamma1,
    Gamma2,
    Neither,
}

fn in_domain(pt: PPlanePoint) -> Result<()> {
    if pt.r < 1.0 {
        return Err(Error::OutsideDomain { r: pt.r });
    }
    Ok(())
}

fn circle_side(p: C, center: (f64, f64)) -> f64 {
    (p.re - center.0).powi(2) + (p.im - center.1).powi(2) - 6.0
}

/// Where `|t1| < |t3|` for the branch labelling of [`branch_images`]:
/// `Gamma1` on the half `cos(theta + pi/3) > 0`, `Gamma2` on the other half.
///
/// `|t1|^2 - |t3|^2 = sqrt3 cos(psi) (20/9 sin(psi) + sigma k)` with
/// `psi = theta + pi/3`, `k = 2 sqrt5/9 (r - 1/r)`, so each half is cut by a
/// circle of radius `sqrt 6`.
pub fn gamma_region(pt: PPlanePoint, branch: LambdaBranch) -> Result<GammaRegion> {
    in_domain(pt)?;
    let p = pt.to_complex();
    let cos_psi = (pt.theta + PI / 3.0).cos();
    let (center, outside_first) = branch.order_circle();
    let side = circle_side(p, center);
    let want = |outside: bool| if outside { side > 0.0 } else { side < 0.0 };
    Ok(if cos_psi > 0.0 && want(outside_first) {
        GammaRegion::Gamma1
    } else if cos_psi < 0.0 && want(!outside_first) {
        GammaRegion::Gamma2
    } else {
        GammaRegion::Neither
    })
}

/// The two regions exactly as printed: the tie circle centred at
/// `(-sqrt15/2, sqrt5/2)` reused as the separating circle, outside on
/// `(-5pi/6, pi/6)` and inside on `(pi/6, 7pi/6)`. Kept for comparison; it
/// does not imply `|t1| < |t3|`.
pub fn gamma_region_as_printed(pt: PPlanePoint) -> Result<GammaRegion> {
    in_domain(pt)?;
    let p = pt.to_complex();
    let side = circle_side(p, (-SQRT15 / 2.0, SQRT5 / 2.0));
    let th = pt.theta;
    let in_first = th > -5.0 * PI / 6.0 && th < PI / 6.0;
    let in_second = th > PI / 6.0 || th < -5.0 * PI / 6.0;
    Ok(if side > 0.0 && in_first {
        GammaRegion::Gamma1
    } else if side < 0.0 && in_second {
        GammaRegion::Gamma2
    } else {
        GammaRegion::Neither
    })
}

fn in_gamma(p: C, branch: LambdaBranch) -> bool {
    let pt = PPlanePoint::from_complex(p);
    pt.r >= 1.0 && gamma_region(pt, branch).map(|g| g != GammaRegion::Neither).unwrap_or(false)
}

/// Splits one locus piece into the maximal parameter intervals on which
/// `gamma_region` holds.
fn clip_to_gamma(piece: &LocusSpec, branch: LambdaBranch) -> Vec<LocusSpec> {
    const STEPS: usize = 4096;
    // Rays are scanned in s = 1/r so the unbounded end is covered.
    let to_param = |u: f64| match piece {
        LocusSpec::Ray { r_min, .. } => r_min / u.max(1e-12),
        LocusSpec::Arc { phi_start, phi_end, .. } => phi_start + (phi_end - phi_start) * u,
    };
    let u_of = |k: usize| match piece {
        LocusSpec::Ray { .. } => 1.0 - k as f64 / STEPS as f64,
        LocusSpec::Arc { .. } => k as f64 / STEPS as f64,
    };
    let inside = |u: f64| in_gamma(piece.point_at(to_param(u)), branch);
    let refine = |mut a: f64, mut b: f64| {
        // inside(a) != inside(b)
        let ia = inside(a);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if inside(m) == ia {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    let mut out = Vec::new();
    let mut start: Option<f64> = if inside(u_of(0)) { Some(u_of(0)) } else { None };
    for k in 1..=STEPS {
        let (u0, u1) = (u_of(k - 1), u_of(k));
        let (a, b) = (inside(u0), inside(u1));
        if a != b {
            let edge = refine(u0, u1);
            if b {
                start = Some(edge);
            } else if let Some(s) = start.take() {
                out.push((s, edge));
            }
        }
    }
    if let Some(s) = start {
        out.push((s, u_of(STEPS)));
    }
    out.into_iter()
        .map(|(u0, u1)| {
            let (p0, p1) = (to_param(u0), to_param(u1));
            let (lo, hi) = if p0 <= p1 { (p0, p1) } else { (p1, p0) };
            match *piece {
                LocusSpec::Ray { angle, .. } => {
                    let hi = if hi >= 1e11 { f64::INFINITY } else { hi };
                    LocusSpec::Ray { angle, r_min: lo, r_max: hi }
                }
                LocusSpec::Arc { center, radius, .. } => LocusSpec::Arc { center, radius, phi_start: lo, phi_end: hi },
            }
        })
        .collect()
}

/// `L1 = (Gamma1 u Gamma2) n (ray -pi/6 u tie circle)`; `L2` and `L3` are
/// its rotations by `4pi/3` and `2pi/3`.
pub fn l_set(i: u8, branch: LambdaBranch) -> Result<Vec<LocusSpec>> {
    let rot = match i {
        1 => 0.0,
        2 => 4.0 * PI / 3.0,
        3 => 2.0 * PI / 3.0,
        _ => return Err(Error::InvalidArgument(format!("l_set index must be 1, 2 or 3, got {i}"))),
    };
    let loci = pplane_locus(branch);
    let base: Vec<LocusSpec> = [loci[0], loci[2]]
        .iter()
        .flat_map(|piece| clip_to_gamma(piece, branch))
        .collect();
    Ok(base.iter().map(|l| l.rotated(rot)).collect())
}

/// `beta = -(p^3 + p^-3)`.
pub fn locus_to_beta(pt: PPlanePoint) -> C {
    let s = pt.to_complex().powi(3);
    -(s + s.inv())
}
