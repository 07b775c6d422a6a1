//! Radial null geodesics r(t) in Maxwellian wave backgrounds.

use super::maxwellian::{drdt_asymptotic, drdt_maxwellian, MaxwellianWave};
use super::{Direction, ModeChoice};
use crate::error::{Error, Result};
use crate::numerics::{integrate_ode_until, OdeStepControl};

/// Closed-form trajectories of the asymptotic law with t(r0) = 0:
/// ingoing t = r0 − r, outgoing t = r − r0 + r_c ln((r − r_c)/(r0 − r_c)).
pub fn geodesic_t_of_r_closed(r: f64, r0: f64, rc: f64, direction: Direction) -> Result<f64> {
    match direction {
        Direction::Ingoing => Ok(r0 - r),
        Direction::Outgoing => {
            let a = r - rc;
            let b = r0 - rc;
            if a == 0.0 || b == 0.0 || a.signum() != b.signum() {
                return Err(Error::BranchCrossing { r, r0, rc });
            }
            Ok(r - r0 + rc * (a / b).ln())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ReachedBound,
    HorizonStall,
    StepLimit,
    SingularStop,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::ReachedBound => "reached_bound",
            Termination::HorizonStall => "horizon_stall",
            Termination::StepLimit => "step_limit",
            Termination::SingularStop => "singular_stop",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub direction: Direction,
    pub mode: ModeChoice,
    /// (t, r) pairs with t strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub r0: f64,
    pub termination: Termination,
}

/// Which velocity law drives the integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VelocityLaw {
    Bessel,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicControl {
    pub ode: OdeStepControl,
    /// Optional escape radius; crossing it counts as reaching the bound.
    pub r_max: Option<f64>,
    pub law: VelocityLaw,
}

impl Default for GeodesicControl {
    fn default() -> Self {
        GeodesicControl { ode: OdeStepControl::default(), r_max: None, law: VelocityLaw::Bessel }
    }
}

/// Velocities below this magnitude count toward a horizon stall.
pub const STALL_SPEED: f64 = 1e-9;
/// Consecutive slow steps that trigger a stall.
pub const STALL_STEPS: usize = 1000;

/// r floor below which integration stops as singular.
pub fn singular_floor(omega: f64) -> f64 {
    1e-3 / omega
}

pub fn integrate_geodesic(
    wave: &MaxwellianWave,
    alpha: f64,
    r0: f64,
    direction: Direction,
    mode: ModeChoice,
    t_max: f64,
    control: &GeodesicControl,
) -> Result<GeodesicPath> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::Domain { what: "r0", value: r0 });
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Domain { what: "t_max", value: t_max });
    }
    let floor = singular_floor(wave.omega);
    let law = control.law;
    let speed = move |t: f64, r: f64| -> f64 {
        if !(r > 0.0) {
            return f64::NAN;
        }
        match law {
            VelocityLaw::Bessel => drdt_maxwellian(wave, alpha, t, r, direction, mode),
            VelocityLaw::Asymptotic => drdt_asymptotic(wave, alpha, r, direction, mode),
        }
        .unwrap_or(f64::NAN)
    };
    let mut slow = 0usize;
    let mut why = Termination::ReachedBound;
    let r_max = control.r_max;
    let run = integrate_ode_until(
        |t, y| vec![speed(t, y[0])],
        &[r0],
        (0.0, t_max),
        &control.ode,
        |t, y| {
            let r = y[0];
            if r <= floor {
                why = Termination::SingularStop;
                return true;
            }
            if r_max.is_some_and(|m| r >= m) {
                why = Termination::ReachedBound;
                return true;
            }
            if speed(t, r).abs() < STALL_SPEED {
                slow += 1;
                if slow >= STALL_STEPS {
                    why = Termination::HorizonStall;
                    return true;
                }
            } else {
                slow = 0;
            }
            false
        },
    );
    let run = match run {
        Ok(run) => run,
        Err(Error::StepLimit { .. }) => return Err(Error::StepLimit { max_steps: control.ode.max_steps, s: t_max }),
        Err(e) => return Err(e),
    };
    let termination = if run.stopped_early { why } else { Termination::ReachedBound };
    let samples = run.samples.into_iter().map(|(t, y)| (t, y[0])).take_while(|&(_, r)| r > 0.0).collect();
    Ok(GeodesicPath { direction, mode, samples, r0, termination })
}
