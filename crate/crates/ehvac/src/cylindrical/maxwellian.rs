//! Bessel-wave solutions of the linear equations and their velocity laws.

use super::ansatz::{check_r, AnsatzPoint, CylindricalAnsatz, DerivativeSource, Jet};
use super::{Direction, ModeChoice};
use crate::error::{Error, Result};
use crate::numerics::{bessel_j0, bessel_j1, bessel_y0, bessel_y1, find_root_bracketed};
use std::f64::consts::PI;

/// û = (U/ω)(J₁(ωr) cos ωt − Y₁(ωr) sin ωt), v = (V/ω)(J₀(ωr) cos ωt − Y₀(ωr) sin ωt).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellianWave {
    pub u_amp: f64,
    pub v_amp: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy)]
struct BesselSet {
    j0: f64,
    j1: f64,
    y0: f64,
    y1: f64,
}

fn bessel_set(x: f64) -> Result<BesselSet> {
    Ok(BesselSet { j0: bessel_j0(x)?, j1: bessel_j1(x)?, y0: bessel_y0(x)?, y1: bessel_y1(x)? })
}

impl MaxwellianWave {
    pub fn new(u_amp: f64, v_amp: f64, omega: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain { what: "omega", value: omega });
        }
        if !u_amp.is_finite() || !v_amp.is_finite() {
            return Err(Error::InvalidParameter("wave amplitudes must be finite".into()));
        }
        Ok(MaxwellianWave { u_amp, v_amp, omega })
    }

    pub fn circular(amp: f64, omega: f64) -> Result<Self> {
        Self::new(amp, amp, omega)
    }

    /// Circular wave whose asymptotic horizon 88α²A²/(45πω) equals `rc`.
    pub fn circular_with_horizon(rc: f64, omega: f64, alpha: f64) -> Result<Self> {
        if !(rc >= 0.0) || !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("need rc >= 0 and alpha > 0, got rc = {rc}, alpha = {alpha}")));
        }
        let amp = (45.0 * PI * omega * rc / (88.0 * alpha * alpha)).sqrt();
        Self::circular(amp, omega)
    }

    pub fn is_circular(&self) -> bool {
        self.u_amp == self.v_amp
    }

    /// Circular amplitude A (= U = V).
    pub fn amplitude(&self) -> Option<f64> {
        self.is_circular().then_some(self.u_amp)
    }
}

/// The wave as an ansatz with analytic partials.
pub fn maxwellian_ansatz(wave: MaxwellianWave) -> Result<MaxwellianWave> {
    MaxwellianWave::new(wave.u_amp, wave.v_amp, wave.omega)
}

impl CylindricalAnsatz for MaxwellianWave {
    fn point(&self, t: f64, r: f64) -> Result<AnsatzPoint> {
        check_r(r)?;
        let w = self.omega;
        let x = w * r;
        let b = bessel_set(x)?;
        let (s, c) = (w * t).sin_cos();
        let (uu, vv) = (self.u_amp, self.v_amp);
        let u_val = uu * r / w * (b.j1 * c - b.y1 * s);
        let u = Jet {
            val: u_val,
            t: -uu * r * (b.j1 * s + b.y1 * c),
            r: uu * r * (b.j0 * c - b.y0 * s),
            tt: -w * w * u_val,
            tr: -uu * x * (b.j0 * s + b.y0 * c),
            rr: uu * ((b.j0 * c - b.y0 * s) - x * (b.j1 * c - b.y1 * s)),
        };
        let v_val = vv / w * (b.j0 * c - b.y0 * s);
        let dj1 = b.j0 - b.j1 / x;
        let dy1 = b.y0 - b.y1 / x;
        let v = Jet {
            val: v_val,
            t: -vv * (b.j0 * s + b.y0 * c),
            r: vv * (-b.j1 * c + b.y1 * s),
            tt: -w * w * v_val,
            tr: vv * w * (b.j1 * s + b.y1 * c),
            rr: vv * w * (-dj1 * c + dy1 * s),
        };
        Ok(AnsatzPoint { t, r, u, v })
    }

    fn derivative_source(&self) -> DerivativeSource {
        DerivativeSource::Analytic
    }
}

/// Second-order radial velocity on a Maxwellian wave, from the Bessel closed
/// forms. Circular waves use the t-independent Wronskian-reduced form.
pub fn drdt_maxwellian(wave: &MaxwellianWave, alpha: f64, t: f64, r: f64, direction: Direction, mode: ModeChoice) -> Result<f64> {
    check_r(r)?;
    let x = wave.omega * r;
    let b = bessel_set(x)?;
    let k = mode.coefficient() * alpha * alpha / 45.0;
    if wave.is_circular() {
        let a2 = wave.u_amp * wave.u_amp;
        let sum = b.j0 * b.j0 + b.j1 * b.j1 + b.y0 * b.y0 + b.y1 * b.y1;
        let w = 4.0 / (PI * x);
        return Ok(match direction {
            Direction::Outgoing => 1.0 - k * a2 * (w + sum),
            Direction::Ingoing => -1.0 + k * a2 * (-w + sum),
        });
    }
    let (s, c) = (wave.omega * t).sin_cos();
    let (u2, v2) = (wave.u_amp * wave.u_amp, wave.v_amp * wave.v_amp);
    Ok(match direction {
        Direction::Ingoing => {
            let p = (b.j0 + b.y1) * c + (b.j1 - b.y0) * s;
            let q = (-b.j1 + b.y0) * c + (b.j0 + b.y1) * s;
            -1.0 + k * (u2 * p * p + v2 * q * q)
        }
        Direction::Outgoing => {
            let p = (-b.j0 + b.y1) * c + (b.j1 + b.y0) * s;
            let q = (b.j1 + b.y0) * c + (b.j0 - b.y1) * s;
            1.0 - k * (u2 * p * p + v2 * q * q)
        }
    })
}

/// Large-ωr circular law: ingoing −1, outgoing 1 − 8cα²A²/(45πωr).
pub fn drdt_asymptotic(wave: &MaxwellianWave, alpha: f64, r: f64, direction: Direction, mode: ModeChoice) -> Result<f64> {
    check_r(r)?;
    let rc = asymptotic_rc(wave, alpha, mode)?;
    Ok(match direction {
        Direction::Ingoing => -1.0,
        Direction::Outgoing => 1.0 - rc / r,
    })
}

/// r_c = 8cα²A²/(45πω); c = 11 averaged gives 88, the modes give 88 ± 24.
pub fn asymptotic_rc(wave: &MaxwellianWave, alpha: f64, mode: ModeChoice) -> Result<f64> {
    let amp = wave.amplitude().ok_or_else(|| Error::InvalidParameter("asymptotic law needs a circular wave".into()))?;
    Ok(8.0 * mode.coefficient() * alpha * alpha * amp * amp / (45.0 * PI * wave.omega))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizonMethod {
    AsymptoticEstimate,
    BesselRoot,
    Exact,
}

impl HorizonMethod {
    pub fn name(self) -> &'static str {
        match self {
            HorizonMethod::AsymptoticEstimate => "asymptotic_estimate",
            HorizonMethod::BesselRoot => "bessel_root",
            HorizonMethod::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonReport {
    pub outer_rc: Option<f64>,
    pub inner_r_i: Option<f64>,
    pub degenerate_radius: Option<f64>,
    pub method: HorizonMethod,
}

/// Grid density of the sign-change scan in [`find_horizons`].
pub const HORIZON_SCAN_POINTS: usize = 4000;

/// Brackets sign changes on a logarithmic grid over `bracket` and refines
/// them: the outermost root of the outgoing law, the innermost root of the
/// ingoing law, and the radius where the two velocities coincide (preferring
/// one between the other two).
pub fn find_horizons(wave: &MaxwellianWave, alpha: f64, mode: ModeChoice, bracket: (f64, f64)) -> Result<HorizonReport> {
    if !wave.is_circular() {
        return Err(Error::InvalidParameter("horizon search needs a circular wave".into()));
    }
    let (lo, hi) = bracket;
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!("bad horizon bracket ({lo}, {hi})")));
    }
    let out = |r: f64| drdt_maxwellian(wave, alpha, 0.0, r, Direction::Outgoing, mode).unwrap_or(f64::NAN);
    let inw = |r: f64| drdt_maxwellian(wave, alpha, 0.0, r, Direction::Ingoing, mode).unwrap_or(f64::NAN);
    let gap = |r: f64| out(r) - inw(r);

    let n = HORIZON_SCAN_POINTS;
    let ratio = (hi / lo).ln();
    let grid: Vec<f64> = (0..=n).map(|i| lo * (ratio * i as f64 / n as f64).exp()).collect();
    let tol = 1e-14;

    let brackets = |f: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
        let vals: Vec<f64> = grid.iter().map(|&r| f(r)).collect();
        grid.windows(2)
            .zip(vals.windows(2))
            .filter(|(_, v)| v[0].is_finite() && v[1].is_finite() && (v[0] == 0.0 || v[0] * v[1] < 0.0))
            .map(|(r, _)| (r[0], r[1]))
            .collect()
    };
    let refine = |f: &dyn Fn(f64) -> f64, b: (f64, f64)| find_root_bracketed(f, b.0, b.1, tol);

    let outer_rc = match brackets(&out).last() {
        Some(&b) => Some(refine(&out, b)?),
        None => None,
    };
    let inner_r_i = match brackets(&inw).first() {
        Some(&b) => Some(refine(&inw, b)?),
        None => None,
    };
    let gaps = brackets(&gap);
    let chosen = match (inner_r_i, outer_rc) {
        (Some(a), Some(b)) => gaps.iter().find(|g| g.1 > a && g.0 < b).or(gaps.last()),
        _ => gaps.last(),
    };
    let degenerate_radius = match chosen {
        Some(&b) => Some(refine(&gap, b)?),
        None => None,
    };
    Ok(HorizonReport { outer_rc, inner_r_i, degenerate_radius, method: HorizonMethod::BesselRoot })
}

/// Horizon report from the large-ωr law alone.
pub fn asymptotic_horizons(wave: &MaxwellianWave, alpha: f64, mode: ModeChoice) -> Result<HorizonReport> {
    let rc = asymptotic_rc(wave, alpha, mode)?;
    Ok(HorizonReport {
        outer_rc: (rc > 0.0).then_some(rc),
        inner_r_i: None,
        degenerate_radius: None,
        method: HorizonMethod::AsymptoticEstimate,
    })
}
