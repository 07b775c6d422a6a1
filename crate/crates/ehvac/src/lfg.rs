//! Lagrangians L(F, G), their derivative stacks, dispersion coefficients,
//! the Q tensor and the stress-energy tensor.

use crate::error::{Error, Result};
use crate::tensor4::{hodge_dual, invariants, raise_lower, Mat4, Metric4, Rank4, Tensor2, LOWER_LOWER, UPPER_LOWER, ZERO_RANK4};

/// Fine-structure constant.
pub const ALPHA_PHYSICAL: f64 = 1.0 / 137.035_999;

/// L and its partial derivatives at one (F, G).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeStack {
    pub l: f64,
    pub l_f: f64,
    pub l_g: f64,
    pub l_ff: f64,
    pub l_fg: f64,
    pub l_gg: f64,
}

/// A Lagrangian depending only on the invariants F and G.
pub trait Lagrangian: Send + Sync {
    fn alpha(&self) -> f64;
    fn l(&self, f: f64, g: f64) -> f64;
    fn l_f(&self, f: f64, g: f64) -> f64;
    fn l_g(&self, f: f64, g: f64) -> f64;
    fn l_ff(&self, f: f64, g: f64) -> f64;
    fn l_fg(&self, f: f64, g: f64) -> f64;
    fn l_gg(&self, f: f64, g: f64) -> f64;

    fn stack(&self, f: f64, g: f64) -> DerivativeStack {
        DerivativeStack {
            l: self.l(f, g),
            l_f: self.l_f(f, g),
            l_g: self.l_g(f, g),
            l_ff: self.l_ff(f, g),
            l_fg: self.l_fg(f, g),
            l_gg: self.l_gg(f, g),
        }
    }
}

/// L = −F/4 + (α²/90)(F² + 7G²/4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerHeisenberg {
    alpha: f64,
}

/// The Euler-Heisenberg model with coupling `alpha`; `alpha = 0` is Maxwell.
pub fn euler_heisenberg(alpha: f64) -> Result<EulerHeisenberg> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    Ok(EulerHeisenberg { alpha })
}

impl EulerHeisenberg {
    fn a2(&self) -> f64 {
        self.alpha * self.alpha
    }
}

impl Lagrangian for EulerHeisenberg {
    fn alpha(&self) -> f64 {
        self.alpha
    }
    fn l(&self, f: f64, g: f64) -> f64 {
        -f / 4.0 + self.a2() / 90.0 * (f * f + 1.75 * g * g)
    }
    fn l_f(&self, f: f64, _g: f64) -> f64 {
        -0.25 + self.a2() * f / 45.0
    }
    fn l_g(&self, _f: f64, g: f64) -> f64 {
        7.0 * self.a2() * g / 180.0
    }
    fn l_ff(&self, _f: f64, _g: f64) -> f64 {
        self.a2() / 45.0
    }
    fn l_fg(&self, _f: f64, _g: f64) -> f64 {
        0.0
    }
    fn l_gg(&self, _f: f64, _g: f64) -> f64 {
        7.0 * self.a2() / 180.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationMode {
    /// Larger Λ at F = G = 0 (28α²/45 for Euler-Heisenberg).
    Plus,
    /// Smaller Λ at F = G = 0 (16α²/45 for Euler-Heisenberg).
    Minus,
}

impl PolarizationMode {
    pub const BOTH: [PolarizationMode; 2] = [PolarizationMode::Plus, PolarizationMode::Minus];

    pub fn name(self) -> &'static str {
        match self {
            PolarizationMode::Plus => "plus",
            PolarizationMode::Minus => "minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionCoefficients {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Λ2² − 4Λ1Λ3 (clamped to 0 when within roundoff of it).
    pub discriminant: f64,
}

impl DispersionCoefficients {
    pub fn lambda(&self, mode: PolarizationMode) -> f64 {
        match mode {
            PolarizationMode::Plus => self.lambda_plus,
            PolarizationMode::Minus => self.lambda_minus,
        }
    }
}

/// Λ1, Λ2, Λ3 and the roots Λ± = (−Λ2 ± √(Λ2² − 4Λ1Λ3))/(2Λ1).
pub fn dispersion_coefficients(model: &dyn Lagrangian, f: f64, g: f64) -> Result<DispersionCoefficients> {
    let d = model.stack(f, g);
    let a = d.l_f + g * d.l_fg;
    let b = d.l_gg * (2.0 * f * d.l_f + g * g * d.l_ff);
    let lambda1 = a * a - b;
    let lambda2 = 4.0 * (d.l_f * (d.l_ff + d.l_gg) + 2.0 * f * (d.l_fg * d.l_fg - d.l_ff * d.l_gg));
    let lambda3 = 16.0 * (d.l_ff * d.l_gg - d.l_fg * d.l_fg);
    if !(lambda1.abs() > 1e-15 * (a * a + b.abs())) {
        return Err(Error::DegenerateLambda1(lambda1));
    }
    let mut disc = lambda2 * lambda2 - 4.0 * lambda1 * lambda3;
    if disc < 0.0 {
        if disc >= -1e-14 * (lambda2 * lambda2 + (4.0 * lambda1 * lambda3).abs()) {
            disc = 0.0;
        } else {
            return Err(Error::ComplexRoots(disc));
        }
    }
    let sq = disc.sqrt();
    let (lambda_plus, lambda_minus) = if lambda3 == 0.0 && lambda2 == 0.0 {
        (0.0, 0.0)
    } else if lambda2 <= 0.0 {
        // q = (−Λ2 + √D)/2 > 0 gives the "+" root without cancellation.
        let q = 0.5 * (-lambda2 + sq);
        (q / lambda1, if q != 0.0 { lambda3 / q } else { 0.0 })
    } else {
        let q = -0.5 * (lambda2 + sq);
        (lambda3 / q, q / lambda1)
    };
    Ok(DispersionCoefficients { lambda1, lambda2, lambda3, lambda_plus, lambda_minus, discriminant: disc })
}

/// Λ for one mode at (F, G).
pub fn lambda_pm(model: &dyn Lagrangian, f: f64, g: f64, mode: PolarizationMode) -> Result<f64> {
    dispersion_coefficients(model, f, g).map(|c| c.lambda(mode))
}

/// Ω± = −(4L_FF + (L_F + G L_FG)Λ±)/(4L_FG + G L_GG Λ±).
pub fn omega_pm(model: &dyn Lagrangian, f: f64, g: f64, mode: PolarizationMode) -> Result<f64> {
    let d = model.stack(f, g);
    let lam = lambda_pm(model, f, g, mode)?;
    let num = 4.0 * d.l_ff + (d.l_f + g * d.l_fg) * lam;
    let den = 4.0 * d.l_fg + g * d.l_gg * lam;
    if !(den.abs() > 1e-15 * num.abs()) || den == 0.0 {
        return Err(Error::DegenerateOmega(den));
    }
    Ok(-num / den)
}

/// Q^{αβμν} = L_FF F^{αβ}F^{μν} + L_FG(F^{αβ}F*^{μν} + F*^{αβ}F^{μν}) + L_GG F*^{αβ}F*^{μν}.
pub fn q_tensor(model: &dyn Lagrangian, f_upper: &Tensor2, dual_upper: &Tensor2, f: f64, g: f64) -> Result<Rank4> {
    for t in [f_upper, dual_upper] {
        let defect = (t.c + t.c.transpose()).abs().max();
        if defect > 1e-12 * t.c.abs().max().max(1.0) {
            return Err(Error::NotAntisymmetric { defect });
        }
    }
    let d = model.stack(f, g);
    let (a, s) = (&f_upper.c, &dual_upper.c);
    let mut q = ZERO_RANK4;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    q[i][j][k][l] = d.l_ff * a[(i, j)] * a[(k, l)]
                        + d.l_fg * (a[(i, j)] * s[(k, l)] + s[(i, j)] * a[(k, l)])
                        + d.l_gg * s[(i, j)] * s[(k, l)];
                }
            }
        }
    }
    Ok(q)
}

/// T_{μν} = −4 L_F F_μ^α F_{αν} − (L − G L_G) g_{μν}.
pub fn stress_energy(model: &dyn Lagrangian, f_lower: &Tensor2, metric: &Metric4) -> Result<Tensor2> {
    let inv = invariants(f_lower, metric)?;
    let d = model.stack(inv.f, inv.g);
    // F_μ^α = F_{μβ} g^{βα}
    let mixed: Mat4 = f_lower.c * metric.upper();
    let ff = mixed * f_lower.c;
    let t = ff * (-4.0 * d.l_f) - metric.lower() * (d.l - inv.g * d.l_g);
    let t = (t + t.transpose()) * 0.5;
    Ok(Tensor2::new(t, LOWER_LOWER))
}

/// Upper-upper field and dual plus invariants, the usual inputs of the
/// geometry constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldData {
    pub lower: Tensor2,
    pub upper: Tensor2,
    pub mixed: Tensor2,
    pub dual_lower: Tensor2,
    pub dual_upper: Tensor2,
    pub inv: crate::tensor4::InvariantPair,
}

impl FieldData {
    pub fn new(f_lower: &Tensor2, metric: &Metric4) -> Result<Self> {
        let inv = invariants(f_lower, metric)?;
        let upper = raise_lower(f_lower, crate::tensor4::UPPER_UPPER, metric)?;
        let mixed = raise_lower(f_lower, UPPER_LOWER, metric)?;
        let dual_lower = hodge_dual(f_lower, metric)?;
        let dual_upper = raise_lower(&dual_lower, crate::tensor4::UPPER_UPPER, metric)?;
        Ok(FieldData { lower: *f_lower, upper, mixed, dual_lower, dual_upper, inv })
    }
}

/// Determinant of the 2×2 polarization system in (a, b) for given k², h².
pub fn polarization_determinant(model: &dyn Lagrangian, f: f64, g: f64, k2: f64, h2: f64) -> f64 {
    let d = model.stack(f, g);
    let m11 = (d.l_f / 4.0 + g * d.l_fg / 4.0) * k2 + d.l_ff * h2;
    let m12 = (g * d.l_ff / 4.0 - f * d.l_fg / 2.0) * k2 + d.l_fg * h2;
    let m21 = g * d.l_gg / 4.0 * k2 + d.l_fg * h2;
    let m22 = (d.l_f / 4.0 - f * d.l_gg / 2.0 + g * d.l_fg / 4.0) * k2 + d.l_gg * h2;
    m11 * m22 - m12 * m21
}
