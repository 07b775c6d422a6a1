//! Classic fourth-order Runge-Kutta with step-doubling error control.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeStepControl {
    pub initial_step: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeStepControl {
    fn default() -> Self {
        OdeStepControl { initial_step: 1e-2, abs_tol: 1e-10, rel_tol: 1e-10, max_steps: 1_000_000 }
    }
}

impl OdeStepControl {
    fn validate(&self) -> Result<()> {
        let ok =
            self.initial_step > 0.0 && self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_steps >= 1 && self.initial_step.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bad step control {self:?}")))
        }
    }
}

/// Accepted samples plus whether the stop predicate fired before the span end.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeRun {
    pub samples: Vec<(f64, Vec<f64>)>,
    pub stopped_early: bool,
}

/// Integrates `y' = rhs(s, y)` over `s_span`; samples include both endpoints.
pub fn integrate_ode<F>(rhs: F, y0: &[f64], s_span: (f64, f64), control: &OdeStepControl) -> Result<Vec<(f64, Vec<f64>)>>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    integrate_ode_until(rhs, y0, s_span, control, |_, _| false).map(|run| run.samples)
}

/// As [`integrate_ode`], additionally stopping after the first accepted
/// sample for which `stop(s, y)` is true.
pub fn integrate_ode_until<F, S>(mut rhs: F, y0: &[f64], s_span: (f64, f64), control: &OdeStepControl, mut stop: S) -> Result<OdeRun>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
    S: FnMut(f64, &[f64]) -> bool,
{
    control.validate()?;
    let (s0, s1) = s_span;
    if !s0.is_finite() || !s1.is_finite() {
        return Err(Error::InvalidParameter("integration span must be finite".into()));
    }
    let mut samples = vec![(s0, y0.to_vec())];
    if s0 == s1 {
        return Ok(OdeRun { samples, stopped_early: false });
    }
    let dir = (s1 - s0).signum();
    let span = (s1 - s0).abs();
    let h_min = span * 1e-14;
    let mut h = control.initial_step.min(span);
    let mut s = s0;
    let mut y = y0.to_vec();
    let mut accepted = 0usize;

    while (s1 - s) * dir > 0.0 {
        if accepted >= control.max_steps {
            return Err(Error::StepLimit { max_steps: control.max_steps, s });
        }
        let remaining = (s1 - s).abs();
        let last = h >= remaining;
        let step = if last { remaining } else { h };

        let full = rk4_step(&mut rhs, s, &y, dir * step);
        let half =
            rk4_step(&mut rhs, s, &y, dir * step / 2.0).and_then(|mid| rk4_step(&mut rhs, s + dir * step / 2.0, &mid, dir * step / 2.0));
        let (full, fine) = match (full, half) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                h = step / 2.0;
                if h < h_min {
                    return Err(Error::NonFinite { last_s: s });
                }
                continue;
            }
        };
        let err = full
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b).abs() / 15.0 / (control.abs_tol + control.rel_tol * b.abs()))
            .fold(0.0_f64, f64::max);
        if err <= 1.0 {
            s = if last { s1 } else { s + dir * step };
            y = fine;
            accepted += 1;
            samples.push((s, y.clone()));
            if stop(s, &y) {
                return Ok(OdeRun { samples, stopped_early: true });
            }
            if err < 1.0 / 32.0 && !last {
                h = step * 2.0;
            }
        } else {
            h = step / 2.0;
            if h < h_min {
                return Err(Error::StepLimit { max_steps: control.max_steps, s });
            }
        }
    }
    Ok(OdeRun { samples, stopped_early: false })
}

fn rk4_step<F>(rhs: &mut F, s: f64, y: &[f64], h: f64) -> Option<Vec<f64>>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
    let axpy = |a: &[f64], k: &[f64], c: f64| -> Vec<f64> { a.iter().zip(k).map(|(ai, ki)| ai + c * ki).collect() };
    let k1 = rhs(s, y);
    if !finite(&k1) {
        return None;
    }
    let k2 = rhs(s + h / 2.0, &axpy(y, &k1, h / 2.0));
    if !finite(&k2) {
        return None;
    }
    let k3 = rhs(s + h / 2.0, &axpy(y, &k2, h / 2.0));
    if !finite(&k3) {
        return None;
    }
    let k4 = rhs(s + h, &axpy(y, &k3, h));
    if !finite(&k4) {
        return None;
    }
    let out: Vec<f64> = (0..y.len()).map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect();
    finite(&out).then_some(out)
}
