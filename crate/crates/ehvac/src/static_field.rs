//! Static exact solution with û ≡ 0, ∂_t v = E and B = ∂_r v solving
//! B + (8α²/45)(E²B − B³) = k/r, its three branches, effective metrics,
//! radial velocities and horizons.

use crate::cylindrical::{AnsatzPoint, CylindricalAnsatz, DerivativeSource, Direction, Jet};
use crate::error::{Error, Result};
use crate::numerics::{find_root_bracketed, integrate_adaptive, solve_cubic_real};
use crate::tensor4::Mat4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// 0 ≤ B ≤ B_s, r ≥ r_s
    I,
    /// B_s ≤ B ≤ √3 B_s, r ≥ r_s
    II,
    /// B < −√3 B_s, every r > 0
    III,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::I => "I",
            Branch::II => "II",
            Branch::III => "III",
        }
    }
}

/// Sign choice in front of |135 − 136α²(B² − E²)| in 1/Λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StaticMode {
    /// +|…|; 1/Λ = 630/(224α²) at B² = E²
    PlusState,
    /// −|…|; 1/Λ = 360/(224α²) at B² = E²
    MinusState,
}

impl StaticMode {
    pub const BOTH: [StaticMode; 2] = [StaticMode::PlusState, StaticMode::MinusState];

    pub fn name(self) -> &'static str {
        match self {
            StaticMode::PlusState => "plus_state",
            StaticMode::MinusState => "minus_state",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticFieldConfig {
    pub e: f64,
    pub k: f64,
    pub alpha: f64,
    pub branch: Branch,
}

impl StaticFieldConfig {
    pub fn new(e: f64, k: f64, alpha: f64, branch: Branch) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain { what: "k", value: k });
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain { what: "alpha", value: alpha });
        }
        if !e.is_finite() {
            return Err(Error::Domain { what: "E", value: e });
        }
        Ok(StaticFieldConfig { e, k, alpha, branch })
    }

    pub fn with_branch(&self, branch: Branch) -> Self {
        StaticFieldConfig { branch, ..*self }
    }

    /// Linear coefficient c = 1 + 8α²E²/45 of p(B) = cB − dB³.
    pub fn c_lin(&self) -> f64 {
        1.0 + 8.0 * self.alpha * self.alpha * self.e * self.e / 45.0
    }

    /// Cubic coefficient d = 8α²/45.
    pub fn d_cub(&self) -> f64 {
        8.0 * self.alpha * self.alpha / 45.0
    }

    /// p(B) = B + (8α²/45)(E²B − B³).
    pub fn p(&self, b: f64) -> f64 {
        b + self.d_cub() * (self.e * self.e * b - b * b * b)
    }

    /// B_s = √(E²/3 + 15/(8α²)).
    pub fn b_s(&self) -> f64 {
        (self.e * self.e / 3.0 + 15.0 / (8.0 * self.alpha * self.alpha)).sqrt()
    }

    /// r_s = k/p(B_s) = 3k/(2cB_s).
    pub fn r_s(&self) -> f64 {
        3.0 * self.k / (2.0 * self.c_lin() * self.b_s())
    }

    /// r(B) = k/p(B).
    pub fn r_of_b(&self, b: f64) -> f64 {
        self.k / self.p(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub r: f64,
    pub b: f64,
    /// Evaluated at the branch point r = r_s, where branches I and II meet.
    pub boundary: bool,
    /// |p(B) − k/r| relative to the largest term.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSolution {
    pub config: StaticFieldConfig,
    pub b_s: f64,
    pub r_s: f64,
}

impl BranchSolution {
    pub fn new(config: StaticFieldConfig) -> Self {
        BranchSolution { config, b_s: config.b_s(), r_s: config.r_s() }
    }

    pub fn eval(&self, r: f64) -> Result<BranchPoint> {
        branch_point(&self.config, r)
    }
}

fn rel_residual(cfg: &StaticFieldConfig, b: f64, r: f64) -> f64 {
    let target = cfg.k / r;
    let scale = b.abs().max(cfg.d_cub() * b.abs().powi(3)).max(target).max(cfg.c_lin() * b.abs());
    (cfg.p(b) - target).abs() / scale
}

/// Relative distance from r_s treated as the branch point itself.
const BOUNDARY_TOL: f64 = 4.0 * f64::EPSILON;

/// B on the configured branch, with boundary flag and residual.
pub fn branch_point(cfg: &StaticFieldConfig, r: f64) -> Result<BranchPoint> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::ChartSingularity { r });
    }
    let b_s = cfg.b_s();
    let r_s = cfg.r_s();
    let b_top = 3f64.sqrt() * b_s;
    let target = cfg.k / r;
    let (lo, hi) = match cfg.branch {
        Branch::I | Branch::II => {
            if (r - r_s).abs() <= BOUNDARY_TOL * r_s {
                return Ok(BranchPoint { r, b: b_s, boundary: true, residual: rel_residual(cfg, b_s, r) });
            }
            if r < r_s {
                return Err(Error::OutOfDomain { r, r_s });
            }
            if cfg.branch == Branch::I {
                (0.0, b_s)
            } else {
                (b_s, b_top)
            }
        }
        Branch::III => {
            // p(B) runs from +∞ down to 0 on (−∞, −√3 B_s]
            let mut lo = -2.0 * b_top;
            while cfg.p(lo) < target {
                lo *= 2.0;
                if !lo.is_finite() {
                    return Err(Error::NoRootInRange { branch: "III", r });
                }
            }
            (lo, -b_top)
        }
    };
    let f = |b: f64| cfg.p(b) - target;
    let roots = solve_cubic_real(-cfg.d_cub(), 0.0, cfg.c_lin(), -target)?;
    let slack = 1e-9 * b_s;
    let mut b = roots.roots.iter().copied().find(|&x| x >= lo - slack && x <= hi + slack);
    if b.is_none_or(|x| rel_residual(cfg, x, r) > 1e-12) {
        // close to the double root the cubic formula loses half its digits
        b = match find_root_bracketed(f, lo, hi, 1e-15 * b_s) {
            Ok(x) => Some(x),
            Err(Error::NoSignChange { .. }) => None,
            Err(e) => return Err(e),
        };
    }
    let mut b = b.ok_or(Error::NoRootInRange { branch: cfg.branch.name(), r })?;
    let dp = cfg.c_lin() - 3.0 * cfg.d_cub() * b * b;
    if dp != 0.0 {
        let bn = b - f(b) / dp;
        if bn.is_finite() && f(bn).abs() < f(b).abs() && bn >= lo - slack && bn <= hi + slack {
            b = bn;
        }
    }
    Ok(BranchPoint { r, b, boundary: false, residual: rel_residual(cfg, b, r) })
}

/// B(r) on the configured branch.
pub fn branch_solve(cfg: &StaticFieldConfig, r: f64) -> Result<f64> {
    branch_point(cfg, r).map(|p| p.b)
}

/// dB/dr = B(3B_s² − B²)/(3r(B² − B_s²)).
pub fn db_dr(cfg: &StaticFieldConfig, b: f64, r: f64) -> Result<f64> {
    let bs2 = cfg.b_s().powi(2);
    let den = 3.0 * r * (b * b - bs2);
    if den.abs() <= 1e-14 * 3.0 * r * bs2 {
        return Err(Error::BranchPoint);
    }
    Ok(b * (3.0 * bs2 - b * b) / den)
}

/// dB/dr from implicit differentiation of r·p(B) = k.
pub fn db_dr_implicit(cfg: &StaticFieldConfig, b: f64, r: f64) -> Result<f64> {
    let dp = cfg.c_lin() - 3.0 * cfg.d_cub() * b * b;
    if dp == 0.0 {
        return Err(Error::BranchPoint);
    }
    Ok(-(cfg.k / (r * r)) / dp)
}

/// 1/Λ = (495 + 24α²X ± |135 − 136α²X|)/(224α²) with X = B² − E²; `+` is
/// the plus state. Values within roundoff of zero are returned as zero.
pub fn lambda_inverse_static_x(alpha: f64, x: f64, mode: StaticMode) -> f64 {
    let a2 = alpha * alpha;
    let kink = (135.0 - 136.0 * a2 * x).abs();
    let s = match mode {
        StaticMode::PlusState => 1.0,
        StaticMode::MinusState => -1.0,
    };
    let num = 495.0 + 24.0 * a2 * x + s * kink;
    let size = 495.0 + (24.0 * a2 * x).abs() + 135.0 + (136.0 * a2 * x).abs();
    if num.abs() <= 16.0 * f64::EPSILON * size {
        return 0.0;
    }
    num / (224.0 * a2)
}

pub fn lambda_inverse_static(cfg: &StaticFieldConfig, b: f64, mode: StaticMode) -> f64 {
    lambda_inverse_static_x(cfg.alpha, b * b - cfg.e * cfg.e, mode)
}

/// Branch-I radius where 136α²(B² − E²) = 135; exists iff E² ≤ 45/(34α²).
pub fn kink_radius(cfg: &StaticFieldConfig) -> Option<f64> {
    let b2 = cfg.e * cfg.e + 135.0 / (136.0 * cfg.alpha * cfg.alpha);
    let b = b2.sqrt();
    if b > cfg.b_s() {
        return None;
    }
    Some(cfg.r_of_b(b))
}

/// Effective metric at B with components tt = 1 − ΛB², tr = −ΛEB,
/// rr = −1 − ΛE², θθ = −r²(1 − Λ(B² − E²)), zz = −1.
pub fn static_metric_at(cfg: &StaticFieldConfig, b: f64, r: f64, mode: StaticMode) -> Result<Mat4> {
    let inv = lambda_inverse_static(cfg, b, mode);
    if inv == 0.0 {
        return Err(Error::Domain { what: "1/Lambda", value: inv });
    }
    let l = 1.0 / inv;
    let e = cfg.e;
    let mut g = Mat4::zeros();
    g[(0, 0)] = 1.0 - l * b * b;
    g[(0, 1)] = -l * e * b;
    g[(1, 0)] = g[(0, 1)];
    g[(1, 1)] = -1.0 - l * e * e;
    g[(2, 2)] = -r * r * (1.0 - l * (b * b - e * e));
    g[(3, 3)] = -1.0;
    Ok(g)
}

pub fn static_metric(cfg: &StaticFieldConfig, r: f64, mode: StaticMode) -> Result<Mat4> {
    let b = branch_solve(cfg, r)?;
    static_metric_at(cfg, b, r, mode)
}

/// dr/dt = (−EB ± √(1/Λ² − (B² − E²)/Λ))/(E² + 1/Λ), outgoing `+`.
pub fn static_drdt_at(cfg: &StaticFieldConfig, b: f64, mode: StaticMode, direction: Direction) -> Result<f64> {
    let inv = lambda_inverse_static(cfg, b, mode);
    let e = cfg.e;
    let x = b * b - e * e;
    let mut disc = inv * inv - x * inv;
    if disc < 0.0 {
        if disc.abs() <= 16.0 * f64::EPSILON * (inv * inv + (x * inv).abs()) {
            disc = 0.0;
        } else {
            return Err(Error::DegenerateCone(disc));
        }
    }
    let den = e * e + inv;
    if den == 0.0 {
        return Err(Error::DegenerateCone(den));
    }
    let sq = disc.sqrt();
    Ok(match direction {
        Direction::Outgoing => (-e * b + sq) / den,
        Direction::Ingoing => (-e * b - sq) / den,
    })
}

pub fn static_drdt(cfg: &StaticFieldConfig, r: f64, mode: StaticMode, direction: Direction) -> Result<f64> {
    let b = branch_solve(cfg, r)?;
    static_drdt_at(cfg, b, mode, direction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizonKind {
    BlackHole,
    WhiteHole,
}

impl HorizonKind {
    pub fn name(self) -> &'static str {
        match self {
            HorizonKind::BlackHole => "black_hole",
            HorizonKind::WhiteHole => "white_hole",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticHorizonResult {
    pub r_c: f64,
    pub b_c: f64,
    pub classification: HorizonKind,
    pub mode: StaticMode,
    /// Root of the trapped-direction velocity found numerically on branch I.
    pub r_c_root: f64,
}

/// Whether 45/(34α²) < E² < 9/(4α²).
pub fn horizon_hypothesis(cfg: &StaticFieldConfig) -> bool {
    let a2 = cfg.alpha * cfg.alpha;
    let e2 = cfg.e * cfg.e;
    45.0 / (34.0 * a2) < e2 && e2 < 9.0 / (4.0 * a2)
}

/// Minus-state horizon on branch I:
/// B_c = √((45 − 20α²E²)/(8α²)), r_c = 9k√5/(7α E² √(18 − 8α²E²)).
pub fn horizon_exact(cfg: &StaticFieldConfig) -> Result<StaticHorizonResult> {
    if !horizon_hypothesis(cfg) {
        return Err(Error::Hypothesis(format!(
            "need 45/(34 alpha^2) < E^2 < 9/(4 alpha^2), got E^2 = {}, alpha = {}",
            cfg.e * cfg.e,
            cfg.alpha
        )));
    }
    let (a, e2) = (cfg.alpha, cfg.e * cfg.e);
    let b_c = ((45.0 - 20.0 * a * a * e2) / (8.0 * a * a)).sqrt();
    let r_c = 9.0 * cfg.k * 5f64.sqrt() / (7.0 * a * e2 * (18.0 - 8.0 * a * a * e2).sqrt());
    let (classification, direction) =
        if cfg.e > 0.0 { (HorizonKind::BlackHole, Direction::Outgoing) } else { (HorizonKind::WhiteHole, Direction::Ingoing) };
    let branch = cfg.with_branch(Branch::I);
    let r_s = branch.r_s();
    let speed = |r: f64| static_drdt(&branch, r, StaticMode::MinusState, direction).unwrap_or(f64::NAN);
    // dr/dt changes sign once between r_s and infinity; widen until bracketed
    let lo = r_s * (1.0 + 1e-9);
    let mut hi = 2.0 * r_s;
    while speed(hi).signum() == speed(lo).signum() {
        hi *= 2.0;
        if hi > 1e12 * r_s {
            return Err(Error::NoSignChange { a: lo, b: hi, fa: speed(lo), fb: speed(hi) });
        }
    }
    let r_c_root = find_root_bracketed(speed, lo, hi, 1e-15 * r_c)?;
    Ok(StaticHorizonResult { r_c, b_c, classification, mode: StaticMode::MinusState, r_c_root })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeverTrappedCheck {
    /// Smallest outgoing velocity over the sampled radii.
    pub min_drdt: f64,
    /// Largest |dr/dt − √(1 − B²Λ)| over the samples.
    pub max_formula_gap: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPointCheck {
    pub outgoing_at_r_s: f64,
    pub ingoing_at_r_s: f64,
    /// 1/Λ − B_s² at r_s, zero in this regime.
    pub inverse_lambda_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalSpeedCheck {
    pub plus_speed: f64,
    pub minus_speed: f64,
    /// −E/√(E² + 45/(8α²)).
    pub expected_plus: f64,
    /// −√(E² + 45/(8α²))/E.
    pub expected_minus: f64,
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppendixBReport {
    pub never_trapped: Result<NeverTrappedCheck>,
    pub branch_point: Result<BranchPointCheck>,
    pub reciprocal: Result<ReciprocalSpeedCheck>,
}

/// Radii sampled by the never-trapped check, log-spaced over [r_s, 10³ r_s].
pub const NEVER_TRAPPED_SAMPLES: usize = 400;

pub fn appendix_b_checks(cfg: &StaticFieldConfig) -> AppendixBReport {
    AppendixBReport { never_trapped: check_never_trapped(cfg), branch_point: check_branch_point(cfg), reciprocal: check_reciprocal(cfg) }
}

fn check_never_trapped(cfg: &StaticFieldConfig) -> Result<NeverTrappedCheck> {
    if cfg.e != 0.0 {
        return Err(Error::Hypothesis(format!("never-trapped check needs E = 0, got {}", cfg.e)));
    }
    let c = cfg.with_branch(Branch::I);
    let r_s = c.r_s();
    let mut min_drdt = f64::INFINITY;
    let mut gap = 0.0f64;
    let n = NEVER_TRAPPED_SAMPLES;
    for i in 0..n {
        let r = r_s * 1e3f64.powf(i as f64 / (n - 1) as f64);
        let b = branch_solve(&c, r)?;
        let v = static_drdt_at(&c, b, StaticMode::PlusState, Direction::Outgoing)?;
        let lam = 1.0 / lambda_inverse_static(&c, b, StaticMode::PlusState);
        gap = gap.max((v - (1.0 - b * b * lam).sqrt()).abs());
        min_drdt = min_drdt.min(v);
    }
    Ok(NeverTrappedCheck { min_drdt, max_formula_gap: gap, samples: n })
}

fn check_branch_point(cfg: &StaticFieldConfig) -> Result<BranchPointCheck> {
    let e2 = cfg.e * cfg.e;
    if e2 > 45.0 / (34.0 * cfg.alpha * cfg.alpha) {
        return Err(Error::Hypothesis(format!("branch-point check needs E^2 <= 45/(34 alpha^2), got {e2}")));
    }
    let b_s = cfg.b_s();
    let inv = lambda_inverse_static(cfg, b_s, StaticMode::MinusState);
    Ok(BranchPointCheck {
        outgoing_at_r_s: static_drdt_at(cfg, b_s, StaticMode::MinusState, Direction::Outgoing)?,
        ingoing_at_r_s: static_drdt_at(cfg, b_s, StaticMode::MinusState, Direction::Ingoing)?,
        inverse_lambda_gap: inv - b_s * b_s,
    })
}

fn check_reciprocal(cfg: &StaticFieldConfig) -> Result<ReciprocalSpeedCheck> {
    if cfg.e == 0.0 {
        return Err(Error::Hypothesis("reciprocal-speed check needs E != 0".into()));
    }
    let e = cfg.e;
    let a2 = cfg.alpha * cfg.alpha;
    // branch II at r → ∞: B² = E² + 45/(8α²)
    let x = 45.0 / (8.0 * a2);
    let b = (e * e + x).sqrt();
    let speed = |mode| -> Result<f64> {
        let inv = lambda_inverse_static_x(cfg.alpha, x, mode);
        let disc = inv * inv - x * inv;
        let disc = if disc.abs() <= 16.0 * f64::EPSILON * (inv * inv + (x * inv).abs()) { 0.0 } else { disc };
        if disc < 0.0 {
            return Err(Error::DegenerateCone(disc));
        }
        Ok((-e * b + disc.sqrt()) / (e * e + inv))
    };
    let plus_speed = speed(StaticMode::PlusState)?;
    let minus_speed = speed(StaticMode::MinusState)?;
    Ok(ReciprocalSpeedCheck { plus_speed, minus_speed, expected_plus: -e / b, expected_minus: -b / e, product: plus_speed * minus_speed })
}

/// The static solution as a cylindrical ansatz: u ≡ 0, v = E t + ∫_{r_ref}^r B.
///
/// The potential value comes from adaptive quadrature; the partials are
/// exact (B and the implicit dB/dr).
pub struct StaticAnsatz {
    pub config: StaticFieldConfig,
    pub r_ref: f64,
    pub quad_tol: f64,
}

impl StaticAnsatz {
    pub fn new(config: StaticFieldConfig, r_ref: f64) -> Self {
        StaticAnsatz { config, r_ref, quad_tol: 1e-12 }
    }

    /// ∫_{r_ref}^r B dr'. On branches I and II the substitution
    /// r' = r_s + s² removes the square-root behaviour of B at r_s.
    pub fn potential(&self, r: f64) -> Result<f64> {
        let cfg = self.config;
        let b = |x: f64| branch_solve(&cfg, x).unwrap_or(f64::NAN);
        match cfg.branch {
            Branch::III => integrate_adaptive(b, self.r_ref, r, self.quad_tol),
            Branch::I | Branch::II => {
                let r_s = cfg.r_s();
                if r < r_s || self.r_ref < r_s {
                    return Err(Error::OutOfDomain { r: r.min(self.r_ref), r_s });
                }
                let s0 = (self.r_ref - r_s).sqrt();
                let s1 = (r - r_s).sqrt();
                integrate_adaptive(|s| 2.0 * s * b((r_s + s * s).max(r_s)), s0, s1, self.quad_tol)
            }
        }
    }
}

impl CylindricalAnsatz for StaticAnsatz {
    fn point(&self, t: f64, r: f64) -> Result<AnsatzPoint> {
        let b = branch_solve(&self.config, r)?;
        let v = Jet {
            val: self.config.e * t + self.potential(r)?,
            t: self.config.e,
            r: b,
            tt: 0.0,
            tr: 0.0,
            rr: db_dr_implicit(&self.config, b, r)?,
        };
        Ok(AnsatzPoint { t, r, u: Jet::default(), v })
    }

    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::Analytic
    }
}
