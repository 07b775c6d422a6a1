use super::reject_key;
use crate::config::{finite, non_negative, positive, samples, ScenarioParams};
use crate::dataset::{Cell, Dataset};
use crate::error::{CliError, CliResult, Context};
use ehvac::lfg::{euler_heisenberg, PolarizationMode};
use ehvac::plane_wave::*;
use rayon::prelude::*;
use std::f64::consts::PI;

pub fn run_plane_wave(p: &ScenarioParams) -> CliResult<Vec<Dataset>> {
    for (key, set) in [("U", p.u.is_some()), ("V", p.v.is_some()), ("E", p.e.is_some()), ("k", p.k.is_some())] {
        if set {
            return Err(CliError::config(format!("key '{key}' does not apply to the plane_wave scenario")));
        }
    }
    reject_key("mode", &p.mode, "plane_wave (both modes are always emitted)")?;
    reject_key("model", &p.model, "plane_wave")?;
    reject_key("branch", &p.branch, "plane_wave")?;
    reject_key("r0", &p.r0, "plane_wave")?;
    let alpha = non_negative("alpha", p.alpha.unwrap_or(1.0))?;
    let a = finite("A", p.a.unwrap_or(1.0))?;
    let b = finite("B", p.b.unwrap_or(a))?;
    if b != a {
        return Err(CliError::config(format!("plane_wave profiles need circular polarization (A = B), got A = {a}, B = {b}")));
    }
    positive("omega", p.omega.unwrap_or(1.0))?;
    let n = samples(p.samples, PROFILE_SAMPLES)?;
    if n < 6 {
        return Err(CliError::config("plane_wave needs samples >= 6 for the conic fit"));
    }
    let model = euler_heisenberg(alpha).context("alpha")?;
    let pp = p_pm(&model, PolarizationMode::Plus).context("P+")?;
    let pm = p_pm(&model, PolarizationMode::Minus).context("P-")?;

    let mut profile = Dataset::new(
        "profile",
        &[
            ("phi", "rad"),
            ("v_plus", "c"),
            ("v_minus", "c"),
            ("n_plus", "1"),
            ("n_minus", "1"),
            ("delta_tau_plus", "t"),
            ("delta_tau_minus", "t"),
        ],
    );
    let rows: Vec<Vec<Cell>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let phi = PI * i as f64 / (n - 1) as f64;
            vec![
                Cell::num(phi),
                Cell::from_result(velocity_phi(pp, a, phi)),
                Cell::from_result(velocity_phi(pm, a, phi)),
                Cell::from_result(refraction_index(pp, a, phi)),
                Cell::from_result(refraction_index(pm, a, phi)),
                Cell::from_result(clock_delay(pp, a, phi)),
                Cell::from_result(clock_delay(pm, a, phi)),
            ]
        })
        .collect();
    rows.into_iter().for_each(|r| profile.push(r));

    let mut fronts = Dataset::new("wavefront", &[("mode", "-"), ("front", "-"), ("phi", "rad"), ("x", "t"), ("z", "t")]);
    let mut summary = Dataset::new(
        "summary",
        &[("mode", "-"), ("P", "1/field^2"), ("PA2", "1"), ("eccentricity_fit", "1"), ("eccentricity_closed", "1")],
    );
    for (name, pv) in [("plus", pp), ("minus", pm)] {
        let w = wavefront_ellipse(pv, a, n).context("wavefront")?;
        for (front, pts) in [("fast", &w.points), ("slow", &w.slow_points)] {
            for &(phi, x, z) in pts {
                fronts.push(vec![Cell::text(name), Cell::text(front), Cell::num(phi), Cell::num(x), Cell::num(z)]);
            }
        }
        let pa2 = pv * a * a;
        summary.push(vec![Cell::text(name), Cell::num(pv), Cell::num(pa2), Cell::num(w.eccentricity), Cell::num(eccentricity_closed(pa2))]);
    }
    Ok(vec![profile, fronts, summary])
}
