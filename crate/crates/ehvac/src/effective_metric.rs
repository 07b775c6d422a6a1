//! Effective cometrics g̃^{μν} = g^{μν} + Λ± F^μ_λ F^{λν} and dispersion probes.

use crate::error::{Error, Result};
use crate::lfg::{dispersion_coefficients, DispersionCoefficients, FieldData, Lagrangian, PolarizationMode};
use crate::tensor4::{Index, Mat4, Metric4, Tensor2, UPPER_LOWER, UPPER_UPPER};
use nalgebra::{SymmetricEigen, Vector4};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConformalChoice {
    /// metric is the plain matrix inverse of the cometric
    RawInverse,
    /// metric carries the overall κ rescaling used by the cylindrical closed forms
    KappaRescaled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveGeometry {
    pub cometric: Mat4,
    pub metric: Mat4,
    pub mode: PolarizationMode,
    pub lambda: f64,
    pub conformal_choice: ConformalChoice,
}

impl EffectiveGeometry {
    /// Signs of the metric eigenvalues: (positive, negative).
    pub fn signature(&self) -> (usize, usize) {
        let eig = SymmetricEigen::new(self.metric).eigenvalues;
        let pos = eig.iter().filter(|&&x| x > 0.0).count();
        let neg = eig.iter().filter(|&&x| x < 0.0).count();
        (pos, neg)
    }

    pub fn is_lorentzian(&self) -> bool {
        self.signature() == (1, 3)
    }
}

/// S^{μν} = F^μ_λ F^{λν}.
pub fn substress(f_mixed: &Tensor2, f_upper: &Tensor2) -> Result<Tensor2> {
    if f_mixed.variance != UPPER_LOWER || f_upper.variance != UPPER_UPPER {
        return Err(Error::Variance("substress needs F^μ_λ and F^{λν}"));
    }
    Ok(Tensor2::new(f_mixed.c * f_upper.c, UPPER_UPPER))
}

/// Inverts `cometric`, rejecting |det| ≤ 1e-12 · (max entry)⁴.
pub fn invert_cometric(cometric: &Mat4, event: [f64; 4]) -> Result<Mat4> {
    let scale = cometric.abs().max();
    let det = cometric.determinant();
    if !(det.abs() > 1e-12 * scale.powi(4)) {
        return Err(Error::SingularMetric { det, event });
    }
    cometric.try_inverse().ok_or(Error::SingularMetric { det, event })
}

/// Builds the effective geometry of one polarization mode.
pub fn effective_cometric(
    metric: &Metric4,
    f_lower: &Tensor2,
    model: &dyn Lagrangian,
    mode: PolarizationMode,
    event: [f64; 4],
) -> Result<EffectiveGeometry> {
    let fd = FieldData::new(f_lower, metric)?;
    let coeffs = dispersion_coefficients(model, fd.inv.f, fd.inv.g)?;
    let lambda = coeffs.lambda(mode);
    let s = substress(&fd.mixed, &fd.upper)?;
    let mut cometric = metric.upper() + s.c * lambda;
    cometric = (cometric + cometric.transpose()) * 0.5;
    let m = invert_cometric(&cometric, event)?;
    Ok(EffectiveGeometry { cometric, metric: (m + m.transpose()) * 0.5, mode, lambda, conformal_choice: ConformalChoice::RawInverse })
}

/// (1 + Λ(G L_G − L)/(4L_F)) g^{μν} − (Λ/(4L_F)) T^{μν}.
pub fn effective_cometric_from_stress(
    metric: &Metric4,
    t_upper: &Tensor2,
    model: &dyn Lagrangian,
    f: f64,
    g: f64,
    mode: PolarizationMode,
) -> Result<Mat4> {
    if t_upper.variance != UPPER_UPPER {
        return Err(Error::Variance("expected T^{μν}"));
    }
    let d = model.stack(f, g);
    if d.l_f == 0.0 {
        return Err(Error::LfZero);
    }
    let lambda = dispersion_coefficients(model, f, g)?.lambda(mode);
    let a = 1.0 + lambda * (g * d.l_g - d.l) / (4.0 * d.l_f);
    let b = lambda / (4.0 * d.l_f);
    Ok(metric.upper() * a - t_upper.c * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    /// larger k_t root
    Future,
    /// smaller k_t root
    Past,
}

/// A propagation covector null for a given effective cometric, together with
/// its field contractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionProbe {
    pub k: Vector4<f64>,
    pub h: Vector4<f64>,
    pub h_dual: Vector4<f64>,
    pub k2: f64,
    pub h2: f64,
    pub h_dual2: f64,
    pub h_dot_hdual: f64,
}

impl DispersionProbe {
    /// Contractions of an arbitrary covector `k` with the field.
    pub fn from_covector(k: Vector4<f64>, fd: &FieldData, metric: &Metric4) -> Self {
        let gi = metric.upper();
        // h_μ = F_μ^λ k_λ with F_μ^λ = F_{μβ} g^{βλ}
        let f_ml = fd.lower.c * gi;
        let d_ml = fd.dual_lower.c * gi;
        let h = f_ml * k;
        let h_dual = d_ml * k;
        let dot = |a: &Vector4<f64>, b: &Vector4<f64>| (gi * b).dot(a);
        DispersionProbe { k, h, h_dual, k2: dot(&k, &k), h2: dot(&h, &h), h_dual2: dot(&h_dual, &h_dual), h_dot_hdual: dot(&h, &h_dual) }
    }

    /// Solves g̃^{μν}k_μk_ν = 0 for k_t given the spatial components.
    pub fn solve(spatial: [f64; 3], geom: &EffectiveGeometry, fd: &FieldData, metric: &Metric4, root: RootChoice) -> Result<Self> {
        let c = &geom.cometric;
        let ks = Vector4::new(0.0, spatial[0], spatial[1], spatial[2]);
        let a = c[(0, 0)];
        let b: f64 = (1..4).map(|i| c[(0, i)] * ks[i]).sum();
        let cc = (c * ks).dot(&ks);
        let disc = b * b - a * cc;
        if disc < 0.0 || a == 0.0 {
            return Err(Error::DegenerateCone(disc));
        }
        let sq = disc.sqrt();
        let (r1, r2) = ((-b + sq) / a, (-b - sq) / a);
        let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
        let kt = match root {
            RootChoice::Future => hi,
            RootChoice::Past => lo,
        };
        Ok(Self::from_covector(Vector4::new(kt, spatial[0], spatial[1], spatial[2]), fd, metric))
    }
}

/// g̃^{μν}k_μk_ν.
pub fn dispersion_residual(probe: &DispersionProbe, geom: &EffectiveGeometry) -> f64 {
    (geom.cometric * probe.k).dot(&probe.k)
}

/// Λ1 (k²)² + Λ2 h² k² + Λ3 (h²)².
pub fn fresnel_residual(probe: &DispersionProbe, coeffs: &DispersionCoefficients) -> f64 {
    coeffs.lambda1 * probe.k2 * probe.k2 + coeffs.lambda2 * probe.h2 * probe.k2 + coeffs.lambda3 * probe.h2 * probe.h2
}

/// Index layout helper for callers holding plain matrices.
pub fn upper_tensor(c: Mat4) -> Tensor2 {
    Tensor2::new(c, [Index::Upper, Index::Upper])
}
