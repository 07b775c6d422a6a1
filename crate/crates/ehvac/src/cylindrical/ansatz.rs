use super::{Direction, ModeChoice};
use crate::error::{Error, Result};
use crate::lfg::{lambda_pm, Lagrangian, PolarizationMode};
use crate::tensor4::{Event, InvariantPair, Mat4, Tensor2, LOWER_LOWER};

/// A function value with its first and second partials in (t, r).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub val: f64,
    pub t: f64,
    pub r: f64,
    pub tt: f64,
    pub tr: f64,
    pub rr: f64,
}

/// u = A_θ and v = A_z with partials at one (t, r).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AnsatzPoint {
    pub t: f64,
    pub r: f64,
    pub u: Jet,
    pub v: Jet,
}

/// Same point expressed through û = u/r and v.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HatPoint {
    pub t: f64,
    pub r: f64,
    pub uh: Jet,
    pub v: Jet,
}

impl AnsatzPoint {
    pub fn to_hat(&self) -> HatPoint {
        let (r, u) = (self.r, self.u);
        let uh = Jet {
            val: u.val / r,
            t: u.t / r,
            r: u.r / r - u.val / (r * r),
            tt: u.tt / r,
            tr: u.tr / r - u.t / (r * r),
            rr: u.rr / r - 2.0 * u.r / (r * r) + 2.0 * u.val / (r * r * r),
        };
        HatPoint { t: self.t, r, uh, v: self.v }
    }
}

impl HatPoint {
    pub fn to_ansatz(&self) -> AnsatzPoint {
        let (r, h) = (self.r, self.uh);
        let u = Jet { val: r * h.val, t: r * h.t, r: h.val + r * h.r, tt: r * h.tt, tr: h.t + r * h.tr, rr: 2.0 * h.r + r * h.rr };
        AnsatzPoint { t: self.t, r, u, v: self.v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
}

/// A cylindrical field given by u(t, r), v(t, r) and their partials.
pub trait CylindricalAnsatz: Sync {
    fn point(&self, t: f64, r: f64) -> Result<AnsatzPoint>;
    fn derivative_source(&self) -> DerivativeSource;
}

/// Ansatz whose partials come from fourth-order central differences of the
/// potential values.
pub struct FiniteDifferenceAnsatz<F> {
    potentials: F,
    step: f64,
}

impl<F> FiniteDifferenceAnsatz<F>
where
    F: Fn(f64, f64) -> Result<(f64, f64)> + Sync,
{
    /// `potentials(t, r)` returns (u, v); `step` is the relative stencil spacing.
    pub fn new(potentials: F, step: f64) -> Self {
        FiniteDifferenceAnsatz { potentials, step }
    }
}

const D1: [(f64, f64); 4] = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
const D2: [(f64, f64); 5] = [(-2.0, -1.0 / 12.0), (-1.0, 16.0 / 12.0), (0.0, -30.0 / 12.0), (1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)];

impl<F> CylindricalAnsatz for FiniteDifferenceAnsatz<F>
where
    F: Fn(f64, f64) -> Result<(f64, f64)> + Sync,
{
    fn point(&self, t: f64, r: f64) -> Result<AnsatzPoint> {
        check_r(r)?;
        let ht = self.step * t.abs().max(1.0);
        let hr = self.step * r.abs().max(1.0);
        if r - 2.0 * hr <= 0.0 {
            return Err(Error::ChartSingularity { r: r - 2.0 * hr });
        }
        let f = |dt: f64, dr: f64| (self.potentials)(t + dt * ht, r + dr * hr);
        let (u0, v0) = f(0.0, 0.0)?;
        let mut u = Jet { val: u0, ..Jet::default() };
        let mut v = Jet { val: v0, ..Jet::default() };
        for &(o, w) in &D1 {
            let (a, b) = f(o, 0.0)?;
            u.t += w * a / ht;
            v.t += w * b / ht;
            let (a, b) = f(0.0, o)?;
            u.r += w * a / hr;
            v.r += w * b / hr;
        }
        for &(o, w) in &D2 {
            let (a, b) = f(o, 0.0)?;
            u.tt += w * a / (ht * ht);
            v.tt += w * b / (ht * ht);
            let (a, b) = f(0.0, o)?;
            u.rr += w * a / (hr * hr);
            v.rr += w * b / (hr * hr);
        }
        for &(ot, wt) in &D1 {
            for &(or, wr) in &D1 {
                let (a, b) = f(ot, or)?;
                u.tr += wt * wr * a / (ht * hr);
                v.tr += wt * wr * b / (ht * hr);
            }
        }
        Ok(AnsatzPoint { t, r, u, v })
    }

    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::FiniteDifference
    }
}

pub(crate) fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::ChartSingularity { r });
    }
    Ok(())
}

/// F_{μν} in (t, r, θ, z): F_{tθ} = ∂_t u, F_{tz} = ∂_t v, F_{rθ} = ∂_r u, F_{rz} = ∂_r v.
pub fn cyl_field_tensor(p: &AnsatzPoint) -> Result<Tensor2> {
    check_r(p.r)?;
    let mut c = Mat4::zeros();
    let set = |c: &mut Mat4, i: usize, j: usize, x: f64| {
        c[(i, j)] = x;
        c[(j, i)] = -x;
    };
    set(&mut c, 0, 2, p.u.t);
    set(&mut c, 0, 3, p.v.t);
    set(&mut c, 1, 2, p.u.r);
    set(&mut c, 1, 3, p.v.r);
    Ok(Tensor2 { c, variance: LOWER_LOWER, antisymmetric: true })
}

pub fn cyl_event(p: &AnsatzPoint) -> Event {
    Event::cylindrical(p.t, p.r, 0.0, 0.0)
}

/// F = (2/r²)[u_r² − u_t² + r²(v_r² − v_t²)], G = (4/r)(u_t v_r − u_r v_t).
pub fn cyl_invariants(p: &AnsatzPoint) -> Result<InvariantPair> {
    check_r(p.r)?;
    let r = p.r;
    let (u, v) = (&p.u, &p.v);
    let f = 2.0 / (r * r) * (u.r * u.r - u.t * u.t + r * r * (v.r * v.r - v.t * v.t));
    let g = 4.0 / r * (u.t * v.r - u.r * v.t);
    Ok(InvariantPair { f, g })
}

/// The six substress components (tt, tr, rr, θθ, θz, zz) in closed form.
pub fn cyl_substress_closed(p: &AnsatzPoint) -> Result<Mat4> {
    check_r(p.r)?;
    let r = p.r;
    let r2 = r * r;
    let (u, v) = (&p.u, &p.v);
    let mut s = Mat4::zeros();
    s[(0, 0)] = (u.t * u.t + r2 * v.t * v.t) / r2;
    s[(0, 1)] = -(u.t * u.r + r2 * v.t * v.r) / r2;
    s[(1, 0)] = s[(0, 1)];
    s[(1, 1)] = (u.r * u.r + r2 * v.r * v.r) / r2;
    s[(2, 2)] = (u.r * u.r - u.t * u.t) / (r2 * r2);
    s[(2, 3)] = (u.r * v.r - u.t * v.t) / r2;
    s[(3, 2)] = s[(2, 3)];
    s[(3, 3)] = v.r * v.r - v.t * v.t;
    Ok(s)
}

/// Λ of the given mode at the point's (F, G).
pub fn lambda_at(p: &AnsatzPoint, model: &dyn Lagrangian, mode: PolarizationMode) -> Result<f64> {
    let inv = cyl_invariants(p)?;
    lambda_pm(model, inv.f, inv.g, mode)
}

/// Rescaled effective metric with components
/// tt = 1 − Λu_r²/r² − Λv_r², tr = −Λu_t u_r/r² − Λv_t v_r, rr = −1 − Λu_t²/r² − Λv_t²,
/// θθ = −r² + Λr²(v_r² − v_t²), θz = Λ(u_t v_t − u_r v_r), zz = −1 + Λ(u_r² − u_t²)/r².
pub fn effective_metric_cyl(p: &AnsatzPoint, lambda: f64) -> Result<Mat4> {
    check_r(p.r)?;
    let r = p.r;
    let r2 = r * r;
    let (u, v) = (&p.u, &p.v);
    let l = lambda;
    let mut g = Mat4::zeros();
    g[(0, 0)] = 1.0 - l * u.r * u.r / r2 - l * v.r * v.r;
    g[(0, 1)] = -l * u.t * u.r / r2 - l * v.t * v.r;
    g[(1, 0)] = g[(0, 1)];
    g[(1, 1)] = -1.0 - l * u.t * u.t / r2 - l * v.t * v.t;
    g[(2, 2)] = -r2 + l * r2 * v.r * v.r - l * r2 * v.t * v.t;
    g[(2, 3)] = l * (u.t * v.t - u.r * v.r);
    g[(3, 2)] = g[(2, 3)];
    g[(3, 3)] = -1.0 + l * u.r * u.r / r2 - l * u.t * u.t / r2;
    Ok(g)
}

/// Factor κ with κ·(raw inverse of the cometric) = [`effective_metric_cyl`].
pub fn rescaling_factor(p: &AnsatzPoint, lambda: f64) -> Result<f64> {
    check_r(p.r)?;
    let r2 = p.r * p.r;
    let (u, v) = (&p.u, &p.v);
    let l = lambda;
    Ok(-((-1.0 + l * v.r * v.r) * (r2 + l * u.t * u.t) - 2.0 * l * l * u.r * v.r * u.t * v.t - r2 * l * v.t * v.t
        + l * u.r * u.r * (1.0 + l * v.t * v.t))
        / r2)
}

/// Radial null velocity from metric components g_tt, g_tr, g_rr (g_rr < 0).
pub fn drdt_from_metric(g_tt: f64, g_tr: f64, g_rr: f64, direction: Direction) -> Result<f64> {
    let disc = g_tr * g_tr - g_tt * g_rr;
    if disc < 0.0 {
        return Err(Error::DegenerateCone(disc));
    }
    let sq = disc.sqrt();
    Ok(match direction {
        Direction::Outgoing => (-g_tr - sq) / g_rr,
        Direction::Ingoing => (-g_tr + sq) / g_rr,
    })
}

/// dr/dt = (−ΛP ± √(Λ²P² + (r² + ΛT)(r² − ΛR)))/(r² + ΛT), with
/// P = u_t u_r + r² v_t v_r, T = u_t² + r² v_t², R = u_r² + r² v_r².
pub fn radial_drdt_full(p: &AnsatzPoint, lambda: f64, direction: Direction) -> Result<f64> {
    check_r(p.r)?;
    let r2 = p.r * p.r;
    let (u, v) = (&p.u, &p.v);
    let pp = u.t * u.r + r2 * v.t * v.r;
    let tt = u.t * u.t + r2 * v.t * v.t;
    let rr = u.r * u.r + r2 * v.r * v.r;
    let l = lambda;
    let disc = l * l * pp * pp + (r2 + l * tt) * (r2 - l * rr);
    if disc < 0.0 {
        return Err(Error::DegenerateCone(disc));
    }
    let sq = disc.sqrt();
    let num = match direction {
        Direction::Outgoing => -l * pp + sq,
        Direction::Ingoing => -l * pp - sq,
    };
    Ok(num / (r2 + l * tt))
}

/// The α² truncation of [`radial_drdt_full`]:
/// outgoing 1 − cα²/(45r²)[(u_t + u_r)² + r²(v_t + v_r)²],
/// ingoing −1 + cα²/(45r²)[(u_t − u_r)² + r²(v_t − v_r)²], c ∈ {14, 8, 11}.
pub fn radial_drdt_second_order(p: &AnsatzPoint, alpha: f64, direction: Direction, mode: ModeChoice) -> Result<f64> {
    check_r(p.r)?;
    let r2 = p.r * p.r;
    let (u, v) = (&p.u, &p.v);
    let k = mode.coefficient() * alpha * alpha / (45.0 * r2);
    Ok(match direction {
        Direction::Outgoing => 1.0 - k * ((u.t + u.r).powi(2) + r2 * (v.t + v.r).powi(2)),
        Direction::Ingoing => -1.0 + k * ((u.t - u.r).powi(2) + r2 * (v.t - v.r).powi(2)),
    })
}

/// Default relative stencil spacing for [`FiniteDifferenceAnsatz`].
pub const FD_ANSATZ_STEP: f64 = 1e-3;
