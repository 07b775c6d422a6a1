//! Special functions, ODE integration, root finding and quadrature.

mod bessel;
mod cubic;
mod ode;
mod quad;
mod roots;

pub use bessel::{bessel, bessel_j0, bessel_j1, bessel_y0, bessel_y1, BesselKind, SERIES_SEAM};
pub use cubic::{solve_cubic_real, CubicRealRoots};
pub use ode::{integrate_ode, integrate_ode_until, OdeRun, OdeStepControl};
pub use quad::integrate_adaptive;
pub use roots::find_root_bracketed;
