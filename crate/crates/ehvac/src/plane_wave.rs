//! Monochromatic plane waves along +z: field, effective geometry, refraction,
//! wavefronts, clock delays and the heuristic collapse velocities.

use crate::effective_metric::effective_cometric;
use crate::error::{Error, Result};
use crate::lfg::{dispersion_coefficients, EulerHeisenberg, Lagrangian, PolarizationMode};
use crate::tensor4::{background_metric, Chart, Event, Mat4, Metric4, Tensor2, LOWER_LOWER};
use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use std::f64::consts::PI;

/// Default number of φ samples on [0, π].
pub const PROFILE_SAMPLES: usize = 721;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveConfig {
    pub a: f64,
    pub b: f64,
    pub omega: f64,
    pub mode: PolarizationMode,
    pub alpha: f64,
}

impl PlaneWaveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega must be > 0, got {}", self.omega)));
        }
        if !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::InvalidParameter("amplitudes must be finite".into()));
        }
        Ok(())
    }

    pub fn is_circular(&self) -> bool {
        self.a == self.b
    }

    pub fn model(&self) -> Result<EulerHeisenberg> {
        crate::lfg::euler_heisenberg(self.alpha)
    }
}

/// F_{μν} of the wave with phase ω(t − z).
pub fn field_tensor_pw(cfg: &PlaneWaveConfig, ev: &Event) -> Result<Tensor2> {
    if ev.chart != Chart::Cartesian {
        return Err(Error::WrongChart { expected: "cartesian" });
    }
    let [t, _, _, z] = ev.coords;
    let phase = cfg.omega * (t - z);
    let ac = cfg.a * phase.cos();
    let bs = cfg.b * phase.sin();
    #[rustfmt::skip]
    let c = Mat4::new(
        0.0,  ac,  bs,  0.0,
        -ac,  0.0, 0.0, ac,
        -bs,  0.0, 0.0, bs,
        0.0, -ac, -bs,  0.0,
    );
    Tensor2::antisymmetric(c, LOWER_LOWER)
}

/// P = −Λ/(4L_F + Λ(G L_G − L)) at a null field.
pub fn p_pm(model: &dyn Lagrangian, mode: PolarizationMode) -> Result<f64> {
    let d = model.stack(0.0, 0.0);
    let lam = dispersion_coefficients(model, 0.0, 0.0)?.lambda(mode);
    let den = 4.0 * d.l_f + lam * (0.0 * d.l_g - d.l);
    if den == 0.0 {
        return Err(Error::LfZero);
    }
    Ok(-lam / den)
}

/// Closed-form effective metric of a circular wave with P A² = `pa2`.
pub fn circular_metric(pa2: f64) -> Mat4 {
    #[rustfmt::skip]
    let m = Mat4::new(
        1.0 - pa2, 0.0,  0.0,  pa2,
        0.0,      -1.0,  0.0,  0.0,
        0.0,       0.0, -1.0,  0.0,
        pa2,       0.0,  0.0, -1.0 - pa2,
    );
    m
}

/// Effective metric of the wave at `ev`, as the raw inverse of the cometric.
pub fn effective_metric_at(cfg: &PlaneWaveConfig, ev: &Event) -> Result<Metric4> {
    let g = background_metric(ev)?;
    let f = field_tensor_pw(cfg, ev)?;
    let model = cfg.model()?;
    let geom = effective_cometric(&g, &f, &model, cfg.mode, ev.coords)?;
    Metric4::new(geom.metric)
}

/// 1 − PA² sin²φ, with rounding-level negatives at the marginal PA² = 1 cut to zero.
fn radicand(pa2: f64, phi: f64) -> f64 {
    let d = 1.0 - pa2 * phi.sin().powi(2);
    if d < 0.0 && d > -4.0 * f64::EPSILON * pa2.max(1.0) {
        0.0
    } else {
        d
    }
}

/// v(φ) = (PA² cosφ + √(1 − PA² sin²φ))/(1 + PA² cos²φ).
pub fn velocity_phi(p: f64, a: f64, phi: f64) -> Result<f64> {
    let pa2 = p * a * a;
    let d = radicand(pa2, phi);
    if d < 0.0 {
        return Err(Error::Trapped { phi });
    }
    let c = phi.cos();
    Ok((pa2 * c + d.sqrt()) / (1.0 + pa2 * c * c))
}

/// Second, slower front speed along φ, present when PA² > 1 and
/// sin²φ ≤ 1/(PA²) with v > 0.
pub fn velocity_phi_slow(p: f64, a: f64, phi: f64) -> Option<f64> {
    let pa2 = p * a * a;
    let d = radicand(pa2, phi);
    if d < 0.0 {
        return None;
    }
    let c = phi.cos();
    let v = (pa2 * c - d.sqrt()) / (1.0 + pa2 * c * c);
    (v > 0.0).then_some(v)
}

/// n(φ) = 1/v(φ).
pub fn refraction_index(p: f64, a: f64, phi: f64) -> Result<f64> {
    let v = velocity_phi(p, a, phi)?;
    if v.abs() < 1e-15 {
        return Err(Error::InfiniteDelay);
    }
    if v < 0.0 {
        return Err(Error::Domain { what: "no forward propagation in this direction", value: phi });
    }
    Ok(1.0 / v)
}

/// Δτ = 1 + (1 + PA² cos²φ)/(PA² cosφ − √(1 − PA² sin²φ)).
pub fn clock_delay(p: f64, a: f64, phi: f64) -> Result<f64> {
    let pa2 = p * a * a;
    let d = radicand(pa2, phi);
    if d < 0.0 {
        return Err(Error::Trapped { phi });
    }
    let c = phi.cos();
    let den = pa2 * c - d.sqrt();
    if den.abs() < 1e-14 {
        return Err(Error::InfiniteDelay);
    }
    Ok(1.0 + (1.0 + pa2 * c * c) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GedankenGeometry {
    Spherical,
    Cylindrical,
}

/// Heuristic outgoing dr/dt when the wave intensity falls off as 1/r²
/// (spherical) or 1/r (cylindrical).
pub fn gedanken_velocity(geometry: GedankenGeometry, p: f64, a: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain { what: "radius must be positive", value: r });
    }
    let pa2 = p * a * a;
    let rn = match geometry {
        GedankenGeometry::Spherical => r.powi(4),
        GedankenGeometry::Cylindrical => r * r,
    };
    Ok((rn - pa2) / (rn + pa2))
}

/// Wavefront at unit time and its fitted eccentricity.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefront {
    /// (φ, x, z) for the leading front.
    pub points: Vec<(f64, f64, f64)>,
    /// (φ, x, z) for the slower front (only when PA² > 1).
    pub slow_points: Vec<(f64, f64, f64)>,
    pub eccentricity: f64,
}

/// Closed-form eccentricity √(PA²/(1 + PA²)).
pub fn eccentricity_closed(pa2: f64) -> f64 {
    (pa2 / (1.0 + pa2)).sqrt()
}

/// Samples the front z = v cosφ, x = v sinφ and fits a conic to it.
pub fn wavefront_ellipse(p: f64, a: f64, n_samples: usize) -> Result<Wavefront> {
    if n_samples < 6 {
        return Err(Error::InvalidParameter("need at least 6 samples".into()));
    }
    let pa2 = p * a * a;
    if !(pa2 >= 0.0) {
        return Err(Error::InvalidParameter(format!("PA^2 must be >= 0, got {pa2}")));
    }
    let mut points = Vec::with_capacity(n_samples);
    let mut slow_points = Vec::new();
    for i in 0..n_samples {
        let phi = PI * i as f64 / (n_samples - 1) as f64;
        if let Ok(v) = velocity_phi(p, a, phi) {
            if v > 0.0 {
                points.push((phi, v * phi.sin(), v * phi.cos()));
            }
        }
        if pa2 > 1.0 {
            if let Some(v) = velocity_phi_slow(p, a, phi) {
                slow_points.push((phi, v * phi.sin(), v * phi.cos()));
            }
        }
    }
    let all: Vec<(f64, f64)> = points.iter().chain(&slow_points).map(|&(_, x, z)| (x, z)).collect();
    let eccentricity = fit_conic_eccentricity(&all)?;
    Ok(Wavefront { points, slow_points, eccentricity })
}

/// Algebraic conic fit a x² + b xz + c z² + d x + e z + f = 0 with unit
/// coefficient norm; returns the eccentricity of the fitted ellipse.
pub fn fit_conic_eccentricity(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 6 {
        return Err(Error::InvalidParameter("conic fit needs at least 6 points".into()));
    }
    let design = DMatrix::from_fn(points.len(), 6, |i, j| {
        let (x, z) = points[i];
        match j {
            0 => x * x,
            1 => x * z,
            2 => z * z,
            3 => x,
            4 => z,
            _ => 1.0,
        }
    });
    let svd = design.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::InvalidParameter("SVD failed".into()))?;
    let (imin, _) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |best, (i, &s)| if s < best.1 { (i, s) } else { best });
    let coef = vt.row(imin);
    let quad = Matrix2::new(coef[0], coef[1] / 2.0, coef[1] / 2.0, coef[2]);
    let eig = SymmetricEigen::new(quad).eigenvalues;
    let (l0, l1) = (eig[0].abs(), eig[1].abs());
    if eig[0] * eig[1] <= 0.0 {
        return Err(Error::Domain { what: "fitted conic is not an ellipse", value: eig[0] * eig[1] });
    }
    let ratio = l0.min(l1) / l0.max(l1);
    Ok((1.0 - ratio).max(0.0).sqrt())
}
