use super::{parse_mode, reject_key};
use crate::config::{finite, log_grid, non_negative, positive, radial_window, samples, ScenarioParams};
use crate::dataset::{Cell, Dataset};
use crate::error::{CliError, CliResult, Context};
use ehvac::cylindrical::*;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Model {
    Full,
    Asymptotic,
}

fn parse_model(s: &str) -> CliResult<Model> {
    match s {
        "full" => Ok(Model::Full),
        "asymptotic" => Ok(Model::Asymptotic),
        other => Err(CliError::config(format!("model must be full or asymptotic, got '{other}'"))),
    }
}

fn build_wave(p: &ScenarioParams, alpha: f64, omega: f64) -> CliResult<MaxwellianWave> {
    let given_amp = p.a.is_some();
    let given_uv = p.u.is_some() || p.v.is_some();
    if [given_amp, given_uv, p.rc_estimate.is_some()].iter().filter(|&&x| x).count() > 1 {
        return Err(CliError::config("set only one of A, (U, V) or rc_estimate"));
    }
    if given_uv {
        let u = finite("U", p.u.unwrap_or(0.0))?;
        let v = finite("V", p.v.unwrap_or(0.0))?;
        return MaxwellianWave::new(u, v, omega).context("wave");
    }
    if let Some(a) = p.a {
        return MaxwellianWave::circular(finite("A", a)?, omega).context("wave");
    }
    let rc = positive("rc_estimate", p.rc_estimate.unwrap_or(1.0))?;
    if alpha == 0.0 {
        return Err(CliError::config("rc_estimate needs alpha > 0"));
    }
    MaxwellianWave::circular_with_horizon(rc, omega, alpha).context("wave")
}

pub fn run_cylindrical(p: &ScenarioParams) -> CliResult<Vec<Dataset>> {
    reject_key("B", &p.b, "cylindrical")?;
    reject_key("E", &p.e, "cylindrical")?;
    reject_key("k", &p.k, "cylindrical")?;
    reject_key("branch", &p.branch, "cylindrical")?;
    let alpha = non_negative("alpha", p.alpha.unwrap_or(1.0))?;
    let omega = positive("omega", p.omega.unwrap_or(1.0))?;
    let mode = parse_mode(p.mode.as_deref().unwrap_or("averaged"))?;
    let model = parse_model(p.model.as_deref().unwrap_or("full"))?;
    let wave = build_wave(p, alpha, omega)?;
    let t0 = finite("t0", p.t0.unwrap_or(0.0))?;
    // length scale for defaults: the asymptotic horizon estimate when there is one
    let scale = match asymptotic_rc(&wave, alpha, ModeChoice::Averaged) {
        Ok(rc) if rc > 0.0 => rc,
        _ => 1.0 / omega,
    };
    let (lo, hi) = radial_window(p.r_min.unwrap_or(0.05 * scale.min(1.0 / omega)), p.r_max.unwrap_or(5.0 * scale))?;
    let n = samples(p.samples, 400)?;
    let t_max = positive("t_max", p.t_max.unwrap_or(20.0 * scale))?;
    if model == Model::Asymptotic && !wave.is_circular() {
        return Err(CliError::config("the asymptotic model needs a circular wave (U = V)"));
    }

    let speed = |r: f64, dir: Direction| match model {
        Model::Full => drdt_maxwellian(&wave, alpha, t0, r, dir, mode),
        Model::Asymptotic => drdt_asymptotic(&wave, alpha, r, dir, mode),
    };
    let mut velocity = Dataset::new("velocity", &[("r", "1/omega"), ("drdt_in", "c"), ("drdt_out", "c")]);
    let rows: Vec<Vec<Cell>> = log_grid(lo, hi, n)
        .into_par_iter()
        .map(|r| vec![Cell::num(r), Cell::from_result(speed(r, Direction::Ingoing)), Cell::from_result(speed(r, Direction::Outgoing))])
        .collect();
    rows.into_iter().for_each(|r| velocity.push(r));

    let report = if wave.is_circular() {
        Some(match model {
            Model::Full => find_horizons(&wave, alpha, mode, (lo, hi)).context("horizon search")?,
            Model::Asymptotic => asymptotic_horizons(&wave, alpha, mode).context("horizon estimate")?,
        })
    } else {
        None
    };
    let est = asymptotic_rc(&wave, alpha, mode).ok();
    let mut horizon = Dataset::new(
        "horizon",
        &[
            ("method", "-"),
            ("outer_rc", "1/omega"),
            ("inner_r_i", "1/omega"),
            ("degenerate_radius", "1/omega"),
            ("asymptotic_rc", "1/omega"),
        ],
    );
    match &report {
        Some(h) => horizon.push(vec![
            Cell::text(h.method.name()),
            Cell::opt(h.outer_rc),
            Cell::opt(h.inner_r_i),
            Cell::opt(h.degenerate_radius),
            Cell::opt(est),
        ]),
        None => horizon.push(vec![Cell::text("none"), Cell::Undef, Cell::Undef, Cell::Undef, Cell::opt(est)]),
    }

    let rc_ref = report.as_ref().and_then(|h| h.outer_rc).unwrap_or(scale);
    let r0s = match &p.r0 {
        Some(v) => {
            for &r in v {
                positive("r0", r)?;
            }
            v.clone()
        }
        None => [0.6, 0.8, 0.9, 1.1, 1.5, 2.0].iter().map(|f| f * rc_ref).collect(),
    };
    let control = GeodesicControl {
        r_max: Some(10.0 * r0s.iter().copied().fold(rc_ref, f64::max)),
        law: match model {
            Model::Full => VelocityLaw::Bessel,
            Model::Asymptotic => VelocityLaw::Asymptotic,
        },
        ..GeodesicControl::default()
    };
    let jobs: Vec<(f64, Direction)> = r0s.iter().flat_map(|&r| [Direction::Outgoing, Direction::Ingoing].map(|d| (r, d))).collect();
    let paths: Vec<(f64, Direction, ehvac::Result<GeodesicPath>)> =
        jobs.into_par_iter().map(|(r0, dir)| (r0, dir, integrate_geodesic(&wave, alpha, r0, dir, mode, t_max, &control))).collect();

    let mut samples_ds = Dataset::new("geodesics", &[("r0", "1/omega"), ("direction", "-"), ("t", "1/omega"), ("r", "1/omega")]);
    let mut summary = Dataset::new(
        "paths",
        &[("r0", "1/omega"), ("direction", "-"), ("termination", "-"), ("samples", "-"), ("t_end", "1/omega"), ("r_end", "1/omega")],
    );
    for (r0, dir, res) in &paths {
        match res {
            Ok(path) => {
                for &(t, r) in &path.samples {
                    samples_ds.push(vec![Cell::num(*r0), Cell::text(dir.name()), Cell::num(t), Cell::num(r)]);
                }
                let (te, re) = path.samples.last().copied().unwrap_or((0.0, *r0));
                summary.push(vec![
                    Cell::num(*r0),
                    Cell::text(dir.name()),
                    Cell::text(path.termination.name()),
                    Cell::Int(path.samples.len() as i64),
                    Cell::num(te),
                    Cell::num(re),
                ]);
            }
            Err(e) => {
                let tag = match e {
                    ehvac::Error::StepLimit { .. } => "step_limit".to_string(),
                    other => format!("error: {other}").replace(',', ";"),
                };
                summary.push(vec![Cell::num(*r0), Cell::text(dir.name()), Cell::Text(tag), Cell::Int(0), Cell::Undef, Cell::Undef]);
            }
        }
    }
    let mut meta = Dataset::new(
        "wave",
        &[("U", "field"), ("V", "field"), ("omega", "1"), ("alpha", "1"), ("mode", "-"), ("model", "-"), ("t0", "1/omega")],
    );
    meta.push(vec![
        Cell::num(wave.u_amp),
        Cell::num(wave.v_amp),
        Cell::num(omega),
        Cell::num(alpha),
        Cell::text(mode.name()),
        Cell::text(match model {
            Model::Full => "full",
            Model::Asymptotic => "asymptotic",
        }),
        Cell::num(t0),
    ]);
    Ok(vec![meta, velocity, horizon, summary, samples_ds])
}
