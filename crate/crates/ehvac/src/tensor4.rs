//! Tensor algebra on flat spacetime in Cartesian and cylindrical charts.
//!
//! Signature is `+---` throughout. Indices are raised and lowered with the
//! background metric only.

use crate::error::{Error, Result};
use nalgebra::Matrix4;

pub type Mat4 = Matrix4<f64>;

/// Γ^λ_{μν} indexed `[λ][μ][ν]`.
pub type Christoffel = [[[f64; 4]; 4]; 4];

/// Rank-4 array, e.g. R^ρ_{σμν} indexed `[ρ][σ][μ][ν]`.
pub type Rank4 = [[[[f64; 4]; 4]; 4]; 4];

pub const ZERO_RANK4: Rank4 = [[[[0.0; 4]; 4]; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// (t, x, y, z)
    Cartesian,
    /// (t, r, θ, z)
    Cylindrical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub chart: Chart,
    pub coords: [f64; 4],
}

impl Event {
    pub fn cartesian(t: f64, x: f64, y: f64, z: f64) -> Self {
        Event { chart: Chart::Cartesian, coords: [t, x, y, z] }
    }

    pub fn cylindrical(t: f64, r: f64, theta: f64, z: f64) -> Self {
        Event { chart: Chart::Cylindrical, coords: [t, r, theta, z] }
    }

    /// Same event with coordinate `axis` moved by `d`.
    pub fn shifted(&self, axis: usize, d: f64) -> Self {
        let mut e = *self;
        e.coords[axis] += d;
        e
    }

    pub fn t(&self) -> f64 {
        self.coords[0]
    }
}

/// Symmetric nondegenerate g_{μν}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric4 {
    g: Mat4,
    inv: Mat4,
}

fn max_abs(m: &Mat4) -> f64 {
    m.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}

impl Metric4 {
    /// Validates symmetry and nondegeneracy.
    pub fn new(g: Mat4) -> Result<Self> {
        let scale = max_abs(&g);
        let asym = max_abs(&(g - g.transpose()));
        if asym > 1e-14 * scale.max(1.0) {
            return Err(Error::InvalidParameter(format!("metric not symmetric (defect {asym:e})")));
        }
        let det = g.determinant();
        if !(det.abs() > 1e-14 * scale.powi(4)) {
            return Err(Error::SingularMetric { det, event: [f64::NAN; 4] });
        }
        let inv = g.try_inverse().ok_or(Error::SingularMetric { det, event: [f64::NAN; 4] })?;
        Ok(Metric4 { g, inv })
    }

    pub fn diagonal(d: [f64; 4]) -> Result<Self> {
        Metric4::new(Mat4::from_diagonal(&d.into()))
    }

    /// g_{μν}
    pub fn lower(&self) -> &Mat4 {
        &self.g
    }

    /// g^{μν}
    pub fn upper(&self) -> &Mat4 {
        &self.inv
    }

    pub fn det(&self) -> f64 {
        self.g.determinant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Upper,
    Lower,
}

pub const LOWER_LOWER: [Index; 2] = [Index::Lower, Index::Lower];
pub const UPPER_UPPER: [Index; 2] = [Index::Upper, Index::Upper];
pub const UPPER_LOWER: [Index; 2] = [Index::Upper, Index::Lower];

/// A rank-2 tensor with explicit index positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor2 {
    pub c: Mat4,
    pub variance: [Index; 2],
    pub antisymmetric: bool,
}

impl Tensor2 {
    pub fn new(c: Mat4, variance: [Index; 2]) -> Self {
        Tensor2 { c, variance, antisymmetric: false }
    }

    /// Flags the tensor antisymmetric after checking it to 1e-14 (relative).
    /// Mixed-variance tensors cannot carry the flag.
    pub fn antisymmetric(c: Mat4, variance: [Index; 2]) -> Result<Self> {
        if variance[0] != variance[1] {
            return Err(Error::Variance("antisymmetry needs equal index positions"));
        }
        let defect = max_abs(&(c + c.transpose()));
        if defect > 1e-14 * max_abs(&c).max(1.0) {
            return Err(Error::NotAntisymmetric { defect });
        }
        Ok(Tensor2 { c, variance, antisymmetric: true })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[(i, j)]
    }
}

/// Flat metric of the event's chart.
pub fn background_metric(ev: &Event) -> Result<Metric4> {
    match ev.chart {
        Chart::Cartesian => Metric4::diagonal([1.0, -1.0, -1.0, -1.0]),
        Chart::Cylindrical => {
            let r = ev.coords[1];
            if !(r > 0.0) {
                return Err(Error::ChartSingularity { r });
            }
            Metric4::diagonal([1.0, -1.0, -r * r, -1.0])
        }
    }
}

/// Finite-difference step along `axis` at `ev`.
pub fn fd_step(ev: &Event, axis: usize) -> f64 {
    1e-4_f64.max(1e-4 * ev.coords[axis].abs())
}

/// Fourth-order central difference of a matrix-valued function along `axis`.
fn central_diff<F>(f: &F, ev: &Event, axis: usize, h: f64) -> Result<Mat4>
where
    F: Fn(&Event) -> Result<Mat4>,
{
    let p1 = f(&ev.shifted(axis, h))?;
    let m1 = f(&ev.shifted(axis, -h))?;
    let p2 = f(&ev.shifted(axis, 2.0 * h))?;
    let m2 = f(&ev.shifted(axis, -2.0 * h))?;
    Ok((m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h))
}

/// Γ^λ_{μν} = ½ g^{λα}(∂_μ g_{αν} + ∂_ν g_{αμ} − ∂_α g_{μν}) by finite differences.
pub fn christoffel<F>(metric_field: &F, ev: &Event) -> Result<Christoffel>
where
    F: Fn(&Event) -> Result<Metric4>,
{
    let at = |e: &Event| -> Result<Metric4> {
        metric_field(e).map_err(|err| match err {
            Error::SingularMetric { det, .. } => Error::SingularMetric { det, event: e.coords },
            other => other,
        })
    };
    let g = at(ev)?;
    let lower = |e: &Event| at(e).map(|m| *m.lower());
    let mut dg = [Mat4::zeros(); 4];
    for (axis, slot) in dg.iter_mut().enumerate() {
        *slot = central_diff(&lower, ev, axis, fd_step(ev, axis))?;
    }
    let ginv = g.upper();
    let mut gam = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for m in 0..4 {
            for n in m..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    s += ginv[(l, a)] * (dg[m][(a, n)] + dg[n][(a, m)] - dg[a][(m, n)]);
                }
                gam[l][m][n] = 0.5 * s;
                gam[l][n][m] = 0.5 * s;
            }
        }
    }
    Ok(gam)
}

/// Moves indices of `t` to `target` using the background `metric`.
pub fn raise_lower(t: &Tensor2, target: [Index; 2], metric: &Metric4) -> Result<Tensor2> {
    let convert = |from: Index, to: Index| -> Option<&Mat4> {
        match (from, to) {
            (Index::Lower, Index::Upper) => Some(metric.upper()),
            (Index::Upper, Index::Lower) => Some(metric.lower()),
            _ => None,
        }
    };
    let mut c = t.c;
    if let Some(m) = convert(t.variance[0], target[0]) {
        c = m * c;
    }
    if let Some(m) = convert(t.variance[1], target[1]) {
        c *= m;
    }
    let antisymmetric = t.antisymmetric && target[0] == target[1];
    Ok(Tensor2 { c, variance: target, antisymmetric })
}

fn permutation_sign(p: [usize; 4]) -> f64 {
    if p[0] == p[1] || p[0] == p[2] || p[0] == p[3] || p[1] == p[2] || p[1] == p[3] || p[2] == p[3] {
        return 0.0;
    }
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// ε_{αβμν} with ε_{0123} = +√|g|.
pub fn levi_civita_lower(metric: &Metric4) -> Rank4 {
    let w = metric.det().abs().sqrt();
    let mut eps = ZERO_RANK4;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    eps[a][b][c][d] = w * permutation_sign([a, b, c, d]);
                }
            }
        }
    }
    eps
}

fn require_lower_antisymmetric(f: &Tensor2) -> Result<()> {
    if f.variance != LOWER_LOWER {
        return Err(Error::Variance("expected a lower-lower tensor"));
    }
    let defect = max_abs(&(f.c + f.c.transpose()));
    if defect > 1e-12 * max_abs(&f.c).max(1.0) {
        return Err(Error::NotAntisymmetric { defect });
    }
    Ok(())
}

/// F*_{αβ} = ½ ε_{αβμν} F^{μν}.
pub fn hodge_dual(f: &Tensor2, metric: &Metric4) -> Result<Tensor2> {
    require_lower_antisymmetric(f)?;
    let up = raise_lower(f, UPPER_UPPER, metric)?;
    let eps = levi_civita_lower(metric);
    let mut d = Mat4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for m in 0..4 {
                for n in 0..4 {
                    s += eps[a][b][m][n] * up.c[(m, n)];
                }
            }
            d[(a, b)] = 0.5 * s;
        }
    }
    Ok(Tensor2 { c: d, variance: LOWER_LOWER, antisymmetric: true })
}

/// The two Poincaré invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantPair {
    /// F_{μν}F^{μν}
    pub f: f64,
    /// F*_{μν}F^{μν}
    pub g: f64,
}

impl InvariantPair {
    pub fn is_null(&self, tol: f64) -> bool {
        self.f * self.f + self.g * self.g <= tol * tol
    }
}

fn contract(a: &Mat4, b: &Mat4) -> f64 {
    a.component_mul(b).sum()
}

pub fn invariants(f: &Tensor2, metric: &Metric4) -> Result<InvariantPair> {
    require_lower_antisymmetric(f)?;
    let up = raise_lower(f, UPPER_UPPER, metric)?;
    let dual = hodge_dual(f, metric)?;
    Ok(InvariantPair { f: contract(&f.c, &up.c), g: contract(&dual.c, &up.c) })
}

/// R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ},
/// with Christoffel derivatives taken by eighth-order central differences of step `h`.
pub fn riemann_numeric<F>(metric_field: &F, ev: &Event, h: f64) -> Result<Rank4>
where
    F: Fn(&Event) -> Result<Metric4>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let gam = christoffel(metric_field, ev)?;
    // eighth-order central stencil for the outer derivative
    const W: [(f64, f64); 8] =
        [(1.0, 672.0), (-1.0, -672.0), (2.0, -168.0), (-2.0, 168.0), (3.0, 32.0), (-3.0, -32.0), (4.0, -3.0), (-4.0, 3.0)];
    let mut dgam = [[[[0.0; 4]; 4]; 4]; 4]; // [axis][ρ][μ][ν]
    for (axis, slot) in dgam.iter_mut().enumerate() {
        for &(o, w) in &W {
            let g = christoffel(metric_field, &ev.shifted(axis, o * h))?;
            for r in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        slot[r][m][n] += w * g[r][m][n] / (840.0 * h);
                    }
                }
            }
        }
    }
    let mut riem = ZERO_RANK4;
    for r in 0..4 {
        for s in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let mut v = dgam[m][r][n][s] - dgam[n][r][m][s];
                    for l in 0..4 {
                        v += gam[r][m][l] * gam[l][n][s] - gam[r][n][l] * gam[l][m][s];
                    }
                    riem[r][s][m][n] = v;
                }
            }
        }
    }
    Ok(riem)
}

pub fn max_abs_rank4(a: &Rank4) -> f64 {
    a.iter().flatten().flatten().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
}
