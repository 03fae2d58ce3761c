//! Pascal-ray polynomial families, their characteristic cubic, and the zero
//! attractor of `T_n(x, 1)`.

pub mod attractor;
pub mod contour;
pub mod cubic;
pub mod error;
pub mod exact;
pub mod rootfinder;
pub mod sequence;

pub use attractor::{AttractorCurve, ConvergenceReport, LocusSpec, PPlanePoint, Window};
pub use contour::ContourSpec;
pub use cubic::{ConformalTrace, Cubic, SortedRoots};
pub use error::{Error, Result};
pub use exact::{BivariatePolynomial, ExactUniPoly, PolyInT, Rational, SeriesExpansion};
pub use num_complex::Complex64;
pub use rootfinder::{NumericUniPoly, ZeroSet};
pub use sequence::{RecurrenceSpec, TauValue};
