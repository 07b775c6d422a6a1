use super::reject_key;
use crate::config::{finite, log_grid, non_negative, radial_window, samples, ScenarioParams};
use crate::dataset::{Cell, Dataset};
use crate::error::{CliResult, Context};
use ehvac::lfg::{euler_heisenberg, PolarizationMode};
use ehvac::plane_wave::{gedanken_velocity, p_pm, GedankenGeometry};

pub fn run_gedanken(p: &ScenarioParams) -> CliResult<Vec<Dataset>> {
    reject_key("mode", &p.mode, "gedanken (both modes are always emitted)")?;
    reject_key("model", &p.model, "gedanken")?;
    reject_key("branch", &p.branch, "gedanken")?;
    reject_key("E", &p.e, "gedanken")?;
    let alpha = non_negative("alpha", p.alpha.unwrap_or(1.0))?;
    let a = finite("A", p.a.unwrap_or(1.0))?;
    let (lo, hi) = radial_window(p.r_min.unwrap_or(0.05), p.r_max.unwrap_or(10.0))?;
    let n = samples(p.samples, 400)?;
    let model = euler_heisenberg(alpha).context("alpha")?;
    let pp = p_pm(&model, PolarizationMode::Plus).context("P+")?;
    let pm = p_pm(&model, PolarizationMode::Minus).context("P-")?;
    use GedankenGeometry::*;

    let mut curves = Dataset::new(
        "velocity",
        &[("r", "length"), ("spherical_plus", "c"), ("spherical_minus", "c"), ("cylindrical_plus", "c"), ("cylindrical_minus", "c")],
    );
    for r in log_grid(lo, hi, n) {
        curves.push(vec![
            Cell::num(r),
            Cell::from_result(gedanken_velocity(Spherical, pp, a, r)),
            Cell::from_result(gedanken_velocity(Spherical, pm, a, r)),
            Cell::from_result(gedanken_velocity(Cylindrical, pp, a, r)),
            Cell::from_result(gedanken_velocity(Cylindrical, pm, a, r)),
        ]);
    }
    let mut crit =
        Dataset::new("critical_radius", &[("mode", "-"), ("P", "1/field^2"), ("spherical", "length"), ("cylindrical", "length")]);
    for (name, pv) in [("plus", pp), ("minus", pm)] {
        let pa2 = pv * a * a;
        crit.push(vec![Cell::text(name), Cell::num(pv), Cell::num(pa2.powf(0.25)), Cell::num(pa2.sqrt())]);
    }
    Ok(vec![curves, crit])
}
