//! Cross-module invariant suites behind `ehvac verify`.
//!
//! Every check reports a measured value against a tolerance; a check passes
//! when the measurement is finite and no larger than the tolerance.

use crate::error::{CliError, CliResult};
use ehvac::cylindrical::*;
use ehvac::effective_metric::{effective_cometric, effective_cometric_from_stress, DispersionProbe};
use ehvac::lfg::*;
use ehvac::numerics::find_root_bracketed;
use ehvac::plane_wave::*;
use ehvac::static_field::*;
use ehvac::tensor4::*;
use nalgebra::Vector4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Fast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub tolerance: f64,
    pub measured: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, tolerance: f64, measured: f64, detail: impl Into<String>) -> Self {
        let passed = measured.is_finite() && measured <= tolerance;
        Check { name: name.to_string(), tolerance, measured, passed, detail: detail.into() }
    }

    fn failed(name: &str, tolerance: f64, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), tolerance, measured: f64::INFINITY, passed: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<34} measured {:>12.4e}  tolerance {:>10.3e}  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance,
                c.detail
            ));
        }
        let failed = self.failures().len();
        s.push_str(&format!("suite {}: {} checks, {} failed\n", self.suite, self.checks.len(), failed));
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "tolerance": c.tolerance,
                    "measured": if c.measured.is_finite() { json!(c.measured) } else { json!("undef") },
                    "passed": c.passed,
                    "detail": c.detail,
                })
            })
            .collect();
        json!({ "suite": self.suite, "passed": self.passed(), "checks": checks })
    }
}

type CheckFn = fn(Suite) -> Vec<Check>;

const CHECKS: &[CheckFn] = &[
    null_field_constants,
    dispersion_closed_form,
    stress_form_equivalence,
    probe_identities,
    plane_wave_flatness,
    refraction_series,
    ellipse_law,
    second_order_law,
    bessel_horizons,
    trapping,
    static_exactness,
    static_horizon,
    theorem_boundary_values,
    operator_transcription,
];

/// Runs the suite, plus the golden comparison when a file is given.
pub fn run_suite(suite: Suite, golden: Option<&Path>) -> CliResult<Report> {
    let golden = golden.map(GoldenFile::load).transpose()?;
    let mut checks: Vec<Check> = CHECKS.par_iter().map(|f| f(suite)).collect::<Vec<_>>().into_iter().flatten().collect();
    if let Some(g) = golden {
        checks.extend(g.checks());
    }
    let name = match suite {
        Suite::All => "all",
        Suite::Fast => "fast",
    };
    Ok(Report { suite: name.to_string(), checks })
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn random_antisym(rng: &mut ChaCha8Rng, scale: f64) -> Mat4 {
    let mut c = Mat4::zeros();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let x = rng.gen_range(-scale..scale);
            c[(i, j)] = x;
            c[(j, i)] = -x;
        }
    }
    c
}

fn random_event(rng: &mut ChaCha8Rng) -> Event {
    if rng.gen_bool(0.5) {
        Event::cartesian(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    } else {
        Event::cylindrical(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0), rng.gen_range(0.0..6.0), rng.gen_range(-2.0..2.0))
    }
}

fn null_field_constants(_: Suite) -> Vec<Check> {
    let mut worst: f64 = 0.0;
    for &alpha in &[1e-3, 1.0, ALPHA_PHYSICAL] {
        let Ok(m) = euler_heisenberg(alpha) else { return vec![Check::failed("null_field_constants", 1e-12, "model")] };
        let a2 = alpha * alpha;
        for (mode, c) in [(PolarizationMode::Plus, 28.0), (PolarizationMode::Minus, 16.0)] {
            match lambda_pm(&m, 0.0, 0.0, mode) {
                Ok(l) => worst = worst.max(rel(l, c * a2 / 45.0)),
                Err(e) => return vec![Check::failed("null_field_constants", 1e-12, e.to_string())],
            }
            match p_pm(&m, mode) {
                Ok(p) => worst = worst.max(rel(p, c * a2 / 45.0)),
                Err(e) => return vec![Check::failed("null_field_constants", 1e-12, e.to_string())],
            }
        }
    }
    vec![Check::new("null_field_constants", 1e-12, worst, "Lambda and P at F = G = 0 versus (22 +- 6) alpha^2 / 45")]
}

fn dispersion_closed_form(_: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let alpha = 0.6;
    let m = euler_heisenberg(alpha).expect("alpha is valid");
    let a2 = alpha * alpha;
    let (mut worst, mut n): (f64, usize) = (0.0, 0);
    while n < 100 {
        let (f, g): (f64, f64) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let Ok(c) = dispersion_coefficients(&m, f, g) else { continue };
        n += 1;
        let sq = (18225.0 - 18360.0 * f * a2 + 4624.0 * f * f * a2 * a2 + 3136.0 * g * g * a2 * a2).sqrt();
        worst = worst.max(rel(c.lambda_plus, 224.0 * a2 / (495.0 + 12.0 * f * a2 - sq)));
        worst = worst.max(rel(c.lambda_minus, 224.0 * a2 / (495.0 + 12.0 * f * a2 + sq)));
    }
    vec![Check::new("dispersion_closed_form", 1e-12, worst, "general Lambda route versus the EH closed form, 100 fields")]
}

fn stress_form_equivalence(suite: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let m = euler_heisenberg(0.4).expect("alpha is valid");
    let count = if suite == Suite::All { 1000 } else { 100 };
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).expect("chart metric");
        let f = Tensor2::antisymmetric(random_antisym(&mut rng, 1.5), LOWER_LOWER).expect("antisymmetric");
        let (Ok(fd), Ok(t)) = (FieldData::new(&f, &g), stress_energy(&m, &f, &g)) else { continue };
        let Ok(t_up) = raise_lower(&t, UPPER_UPPER, &g) else { continue };
        for mode in PolarizationMode::BOTH {
            let Ok(geom) = effective_cometric(&g, &f, &m, mode, ev.coords) else { continue };
            match effective_cometric_from_stress(&g, &t_up, &m, fd.inv.f, fd.inv.g, mode) {
                Ok(alt) => worst = worst.max((alt - geom.cometric).abs().max() / geom.cometric.abs().max()),
                Err(e) => return vec![Check::failed("stress_form_equivalence", 1e-10, e.to_string())],
            }
        }
    }
    vec![Check::new("stress_form_equivalence", 1e-10, worst, format!("direct versus stress-energy cometric, {count} fields"))]
}

fn probe_identities(_: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).expect("chart metric");
        let f = Tensor2::antisymmetric(random_antisym(&mut rng, 2.0), LOWER_LOWER).expect("antisymmetric");
        let Ok(fd) = FieldData::new(&f, &g) else { continue };
        let k = Vector4::from_fn(|_, _| rng.gen_range(-2.0..2.0));
        let p = DispersionProbe::from_covector(k, &fd, &g);
        let scale = (1.0 + fd.inv.f.abs() + fd.inv.g.abs()) * (1.0 + p.k2.abs());
        let gi = g.upper();
        worst = worst
            .max((gi * p.h).dot(&k).abs() / scale)
            .max((p.h_dot_hdual - fd.inv.g * p.k2 / 4.0).abs() / scale)
            .max((p.h2 - p.h_dual2 - fd.inv.f * p.k2 / 2.0).abs() / scale);
    }
    vec![Check::new("probe_identities", 1e-10, worst, "h.k = 0, h.h* = G k^2/4, h^2 - h*^2 = F k^2/2")]
}

fn plane_wave_flatness(suite: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let n = if suite == Suite::All { 20 } else { 5 };
    let circ = PlaneWaveConfig { a: 0.9, b: 0.9, omega: 1.3, mode: PolarizationMode::Plus, alpha: 1.0 };
    let ell = PlaneWaveConfig { a: 0.8, b: 0.35, omega: 1.3, mode: PolarizationMode::Minus, alpha: 1.0 };
    let (mut wc, mut we): (f64, f64) = (0.0, 0.0);
    for _ in 0..n {
        let ev = Event::cartesian(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let c = riemann_numeric(&|e: &Event| effective_metric_at(&circ, e), &ev, 1e-2);
        let e = riemann_numeric(&|e: &Event| effective_metric_at(&ell, e), &ev, 1e-2);
        match (c, e) {
            (Ok(c), Ok(e)) => {
                wc = wc.max(max_abs_rank4(&c));
                we = we.max(max_abs_rank4(&e));
            }
            (Err(err), _) | (_, Err(err)) => return vec![Check::failed("flatness_circular", 1e-8, err.to_string())],
        }
    }
    vec![
        Check::new("flatness_circular", 1e-8, wc, format!("max |Riemann| at {n} events")),
        Check::new("flatness_elliptic", 1e-6, we, format!("max |Riemann| at {n} events, A != B")),
    ]
}

fn refraction_series(_: Suite) -> Vec<Check> {
    let worst = |pa2: f64| -> f64 {
        (0..=2000)
            .map(|i| {
                let phi = PI * i as f64 / 2000.0;
                match refraction_index(pa2, 1.0, phi) {
                    Ok(n) => (n - 1.0 - 2.0 * pa2 * (phi / 2.0).sin().powi(4)).abs(),
                    Err(_) => f64::INFINITY,
                }
            })
            .fold(0.0, f64::max)
    };
    let (e3, e4) = (worst(1e-3), worst(1e-4));
    vec![
        Check::new("refraction_series_bound", 5.0 * 1e-6, e3, "max deviation at PA^2 = 1e-3, bound 5 (PA^2)^2"),
        Check::new(
            "refraction_series_scaling",
            0.2,
            (e3 / e4 / 100.0 - 1.0).abs(),
            format!("deviation ratio {:.3} between PA^2 = 1e-3 and 1e-4", e3 / e4),
        ),
    ]
}

fn ellipse_law(_: Suite) -> Vec<Check> {
    let mut worst: f64 = 0.0;
    for &pa2 in &[0.1, 1.0, 3.0] {
        match wavefront_ellipse(pa2, 1.0, PROFILE_SAMPLES) {
            Ok(w) => worst = worst.max((w.eccentricity - eccentricity_closed(pa2)).abs()),
            Err(e) => return vec![Check::failed("ellipse_law", 1e-6, e.to_string())],
        }
    }
    vec![Check::new("ellipse_law", 1e-6, worst, "fitted eccentricity versus sqrt(PA^2/(1+PA^2))")]
}

fn second_order_law(_: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let wave = MaxwellianWave::circular(1.0, 1.0).expect("wave");
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let (t, r) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.5..5.0));
        let (pm, mc) = if i % 2 == 0 { (PolarizationMode::Plus, ModeChoice::Plus) } else { (PolarizationMode::Minus, ModeChoice::Minus) };
        let gap = |alpha: f64| -> ehvac::Result<f64> {
            let p = wave.point(t, r)?;
            let l = lambda_at(&p, &euler_heisenberg(alpha)?, pm)?;
            Ok(radial_drdt_full(&p, l, Direction::Outgoing)? - radial_drdt_second_order(&p, alpha, Direction::Outgoing, mc)?)
        };
        match (gap(0.1), gap(0.05)) {
            (Ok(a), Ok(b)) => worst = worst.max((a / b - 16.0).abs()),
            _ => return vec![Check::failed("second_order_quartic", 3.0, "velocity evaluation failed")],
        }
    }
    vec![Check::new("second_order_quartic", 3.0, worst, "max |ratio - 16| of full minus truncated law under alpha -> alpha/2")]
}

/// Outer and inner horizons for an asymptotic horizon estimate of 1.
fn figure_horizons(alpha: f64) -> ehvac::Result<(MaxwellianWave, HorizonReport)> {
    let wave = MaxwellianWave::circular_with_horizon(1.0, 1.0, alpha)?;
    let rep = find_horizons(&wave, alpha, ModeChoice::Averaged, (0.01, 100.0))?;
    Ok((wave, rep))
}

fn bessel_horizons(_: Suite) -> Vec<Check> {
    let alpha = 0.5;
    let big = MaxwellianWave::circular_with_horizon(100.0, 1.0, alpha)
        .and_then(|w| find_horizons(&w, alpha, ModeChoice::Averaged, (50.0, 200.0)));
    let c1 = match big {
        Ok(HorizonReport { outer_rc: Some(rc), .. }) => {
            Check::new("bessel_horizon_estimate", 0.01, (rc / 100.0 - 1.0).abs(), format!("outer root {rc:.6} for estimate 100"))
        }
        Ok(_) => Check::failed("bessel_horizon_estimate", 0.01, "no outer root"),
        Err(e) => Check::failed("bessel_horizon_estimate", 0.01, e.to_string()),
    };
    let c2 = match figure_horizons(alpha) {
        Ok((_, HorizonReport { outer_rc: Some(rc), inner_r_i: Some(ri), .. })) => {
            let ok = (0.3..=3.0).contains(&rc) && ri < rc;
            Check::new("bessel_horizon_structure", 0.0, if ok { 0.0 } else { 1.0 }, format!("r_c = {rc:.6}, r_I = {ri:.6}"))
        }
        Ok(_) => Check::failed("bessel_horizon_structure", 0.0, "missing outer or inner root"),
        Err(e) => Check::failed("bessel_horizon_structure", 0.0, e.to_string()),
    };
    vec![c1, c2]
}

fn trapping(suite: Suite) -> Vec<Check> {
    if suite == Suite::Fast {
        return vec![];
    }
    let alpha = 0.5;
    let Ok((wave, rep)) = figure_horizons(alpha) else { return vec![Check::failed("trapping", 0.0, "horizon search failed")] };
    let (Some(rc), Some(ri)) = (rep.outer_rc, rep.inner_r_i) else { return vec![Check::failed("trapping", 0.0, "missing horizons")] };
    let control = GeodesicControl { r_max: Some(10.0 * rc), ..GeodesicControl::default() };
    let inside: Vec<f64> = [0.2, 0.4, 0.6, 0.8, 0.95].iter().map(|f| ri + f * (rc - ri)).collect();
    let outside: Vec<f64> = [1.05, 1.2, 1.5, 2.0, 3.0].iter().map(|f| f * rc).collect();
    let bad_in = inside
        .par_iter()
        .filter(|&&r0| match integrate_geodesic(&wave, alpha, r0, Direction::Outgoing, ModeChoice::Averaged, 50.0, &control) {
            Ok(p) => !p.samples.windows(2).all(|w| w[1].1 < w[0].1 && w[1].0 > w[0].0),
            Err(_) => true,
        })
        .count();
    let bad_out = outside
        .par_iter()
        .filter(|&&r0| match integrate_geodesic(&wave, alpha, r0, Direction::Outgoing, ModeChoice::Averaged, 1e3, &control) {
            Ok(p) => p.termination != Termination::ReachedBound || p.samples.last().is_none_or(|s| s.1 < 10.0 * rc),
            Err(_) => true,
        })
        .count();
    vec![
        Check::new("trapping_inside", 0.0, bad_in as f64, "outgoing paths from r_I < r0 < r_c not strictly decreasing (count of 5)"),
        Check::new("escape_outside", 0.0, bad_out as f64, "outgoing paths from r0 > r_c failing to reach 10 r_c (count of 5)"),
    ]
}

fn static_exactness(suite: Suite) -> Vec<Check> {
    let configs: &[(f64, f64, f64)] = match suite {
        Suite::All => &[(0.0, 1.0, 1.0), (1.224744871391589, 1.0, 1.0), (0.4, 0.3, 2.0), (-0.8, 0.7, 0.5)],
        Suite::Fast => &[(1.224744871391589, 1.0, 1.0)],
    };
    let mut worst: f64 = 0.0;
    for &(e, a, k) in configs {
        let Ok(c) = StaticFieldConfig::new(e, k, a, Branch::I) else { return vec![Check::failed("static_exactness", 1e-9, "config")] };
        let rs = c.r_s();
        let ans = StaticAnsatz::new(c, rs);
        for i in 0..50 {
            let r = rs * 1.01 * (100.0f64 / 1.01).powf(i as f64 / 49.0);
            let res = ans.point(0.0, r).and_then(|p| field_equation_residual(&p.to_hat(), a));
            match res {
                Ok(res) => {
                    worst = worst.max(res.z_residual.abs() / res.z_scale);
                    if res.theta_residual != 0.0 {
                        worst = worst.max(res.theta_residual.abs() / res.theta_scale.max(f64::MIN_POSITIVE));
                    }
                }
                Err(err) => return vec![Check::failed("static_exactness", 1e-9, err.to_string())],
            }
        }
    }
    vec![Check::new("static_exactness", 1e-9, worst, "field-equation residual / term scale on branch I, 50 radii in [1.01, 100] r_s")]
}

fn static_horizon(_: Suite) -> Vec<Check> {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        let alpha = 0.3 + 0.5 * i as f64;
        for j in 0..5 {
            let lo = 45.0 / (34.0 * alpha * alpha);
            let hi = 9.0 / (4.0 * alpha * alpha);
            let e2 = lo + (hi - lo) * (j as f64 + 0.5) / 5.0;
            let Ok(c) = StaticFieldConfig::new(e2.sqrt(), 1.3, alpha, Branch::I) else {
                return vec![Check::failed("static_horizon_root", 1e-10, "config")];
            };
            let Ok(h) = horizon_exact(&c) else {
                return vec![Check::failed("static_horizon_root", 1e-10, format!("no horizon at alpha {alpha}, E^2 {e2}"))];
            };
            let f = |r: f64| static_drdt(&c, r, StaticMode::MinusState, Direction::Outgoing).unwrap_or(f64::NAN);
            match find_root_bracketed(f, c.r_s() * (1.0 + 1e-12), 1e4 * c.r_s(), 1e-16 * h.r_c) {
                Ok(root) => worst = worst.max(rel(root, h.r_c)),
                Err(e) => return vec![Check::failed("static_horizon_root", 1e-10, e.to_string())],
            }
        }
    }
    let example = StaticFieldConfig::new(1.5f64.sqrt(), 1.0, 1.0, Branch::I).and_then(|c| horizon_exact(&c));
    let closed = 9.0 * 5f64.sqrt() / (10.5 * 6f64.sqrt());
    vec![
        Check::new("static_horizon_root", 1e-10, worst, "closed-form r_c versus root search on a 20-point grid"),
        match example {
            Ok(h) => Check::new(
                "static_horizon_example",
                1e-12,
                rel(h.r_c, closed),
                format!("r_c = {:.10} for alpha = 1, E^2 = 1.5, k = 1", h.r_c),
            ),
            Err(e) => Check::failed("static_horizon_example", 1e-12, e.to_string()),
        },
    ]
}

fn theorem_boundary_values(_: Suite) -> Vec<Check> {
    let run = || -> ehvac::Result<(f64, f64, f64)> {
        let mut plus: f64 = 0.0;
        for &alpha in &[0.5, 1.0] {
            for &e2 in &[1.4f64, 1.8, 2.2, 3.0] {
                let e2 = e2 / (alpha * alpha);
                for s in [1.0, -1.0] {
                    let e = s * f64::sqrt(e2);
                    let c = StaticFieldConfig::new(e, 1.0, alpha, Branch::I)?;
                    let bs = c.b_s();
                    let v = static_drdt_at(&c, bs, StaticMode::PlusState, Direction::Outgoing)?;
                    plus = plus.max((v - bs * (e.abs() - e) / (e * e + bs * bs)).abs());
                }
            }
        }
        let mut minus: f64 = 0.0;
        for &alpha in &[0.5, 1.0] {
            for &e2 in &[1.4f64, 1.6, 2.0, 2.2] {
                let a = alpha;
                let e2 = e2 / (a * a);
                let e = e2.sqrt();
                let c = StaticFieldConfig::new(e, 1.0, a, Branch::I)?;
                let v = static_drdt(&c, c.r_s(), StaticMode::MinusState, Direction::Outgoing)?;
                let want =
                    (-168.0 * a * a * e + 4.0 * a * (30.0 * (99.0 - 16.0 * a * a * e2)).sqrt()) * c.b_s() / (495.0 + 88.0 * a * a * e2);
                minus = minus.max((v - want).abs());
            }
        }
        let mut product: f64 = 0.0;
        for &(e, a) in &[(1.0, 1.0), (-0.7, 0.5), (2.0, 0.3)] {
            let c = StaticFieldConfig::new(e, 1.0, a, Branch::II)?;
            let rep = appendix_b_checks(&c).reciprocal?;
            product = product.max((rep.product - 1.0).abs()).max((rep.plus_speed - rep.expected_plus).abs());
        }
        Ok((plus, minus, product))
    };
    match run() {
        Ok((p, m, q)) => vec![
            Check::new("theorem_plus_state_r_s", 1e-12, p, "plus-state outgoing speed at r_s versus B_s(|E| - E)/(E^2 + B_s^2)"),
            Check::new("theorem_minus_state_r_s", 1e-12, m, "minus-state outgoing speed at r_s versus its closed form"),
            Check::new("theorem_branch_two_limits", 1e-12, q, "branch II limiting speeds multiply to 1"),
        ],
        Err(e) => vec![Check::failed("theorem_boundary_values", 1e-12, e.to_string())],
    }
}

/// X^{μν} = 4F F^{μν} + 7G F*^{μν} for the quadratic Taylor field of a jet.
fn x_tensor(h: &HatPoint, dt: f64, dr: f64) -> ehvac::Result<Mat4> {
    let r = h.r + dr;
    let (a, v) = (h.uh, h.v);
    let uh = a.val + a.t * dt + a.r * dr + 0.5 * a.tt * dt * dt + a.tr * dt * dr + 0.5 * a.rr * dr * dr;
    let uh_t = a.t + a.tt * dt + a.tr * dr;
    let uh_r = a.r + a.tr * dt + a.rr * dr;
    let v_t = v.t + v.tt * dt + v.tr * dr;
    let v_r = v.r + v.tr * dt + v.rr * dr;
    let mut c = Mat4::zeros();
    c[(0, 2)] = r * uh_t;
    c[(0, 3)] = v_t;
    c[(1, 2)] = uh + r * uh_r;
    c[(1, 3)] = v_r;
    let f = Tensor2::antisymmetric(c - c.transpose(), LOWER_LOWER)?;
    let g = background_metric(&Event::cylindrical(h.t + dt, r, 0.0, 0.0))?;
    let inv = invariants(&f, &g)?;
    let up = raise_lower(&f, UPPER_UPPER, &g)?;
    let dual_up = raise_lower(&hodge_dual(&f, &g)?, UPPER_UPPER, &g)?;
    Ok(up.c * (4.0 * inv.f) + dual_up.c * (7.0 * inv.g))
}

/// θ and z components of ∂_t X^{tν} + (1/r)∂_r(r X^{rν}).
fn fd_divergence(h: &HatPoint) -> ehvac::Result<(f64, f64)> {
    let eps = 1e-3;
    let st = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
    let (mut th, mut z) = (0.0, 0.0);
    for &(o, w) in &st {
        let xt = x_tensor(h, o * eps, 0.0)?;
        let xr = x_tensor(h, 0.0, o * eps)?;
        let rr = h.r + o * eps;
        th += w * xt[(0, 2)] / eps + w * rr * xr[(1, 2)] / (eps * h.r);
        z += w * xt[(0, 3)] / eps + w * rr * xr[(1, 3)] / (eps * h.r);
    }
    Ok((th, z))
}

fn operator_transcription(_: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut mismatches = 0usize;
    for _ in 0..200 {
        let r = rng.gen_range(1..=5) as f64;
        let mut g = || rng.gen_range(-6i32..=6) as f64;
        let uh = Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() };
        let v = Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() };
        let h = HatPoint { t: 0.0, r, uh, v };
        if cal_u(&h) != cal_u_expanded(&h) || cal_v(&h) != cal_v_expanded(&h) {
            mismatches += 1;
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let mut jet = || {
            let mut g = || rng.gen_range(-1.0..1.0);
            Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() }
        };
        let (uh, v) = (jet(), jet());
        let h = HatPoint { t: 0.0, r: rng.gen_range(0.5..3.0), uh, v };
        match fd_divergence(&h) {
            Ok((th, z)) => {
                let (cu, cv) = (cal_u(&h), cal_v(&h));
                worst = worst
                    .max((cu - h.r.powi(5) * th / 4.0).abs() / cu.abs().max(1e-3))
                    .max((cv - h.r.powi(3) * z / 4.0).abs() / cv.abs().max(1e-3));
            }
            Err(e) => return vec![Check::failed("operator_divergence_oracle", 1e-6, e.to_string())],
        }
    }
    vec![
        Check::new(
            "operator_transcription",
            0.0,
            mismatches as f64,
            "grouped versus expanded operators on 200 integer jets (mismatch count)",
        ),
        Check::new("operator_divergence_oracle", 1e-6, worst, "operators versus finite-difference divergence on 200 random jets"),
    ]
}

/// Reference quantities pinned in a golden file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenFile {
    pub alpha: f64,
    pub expected: BTreeMap<String, f64>,
}

/// Relative tolerance for golden comparisons.
pub const GOLDEN_TOL: f64 = 1e-12;

/// The quantities a golden file may pin, evaluated at `alpha`.
pub fn golden_values(alpha: f64) -> ehvac::Result<BTreeMap<String, f64>> {
    let m = euler_heisenberg(alpha)?;
    let wave = MaxwellianWave::circular(1.0, 1.0)?;
    let stat = StaticFieldConfig::new((1.5f64).sqrt() / alpha, 1.0, alpha, Branch::I)?;
    let mut out = BTreeMap::new();
    out.insert("lambda_plus_null".into(), lambda_pm(&m, 0.0, 0.0, PolarizationMode::Plus)?);
    out.insert("lambda_minus_null".into(), lambda_pm(&m, 0.0, 0.0, PolarizationMode::Minus)?);
    out.insert("p_plus".into(), p_pm(&m, PolarizationMode::Plus)?);
    out.insert("p_minus".into(), p_pm(&m, PolarizationMode::Minus)?);
    out.insert("asymptotic_rc_averaged".into(), asymptotic_rc(&wave, alpha, ModeChoice::Averaged)?);
    out.insert("static_b_s".into(), stat.b_s());
    out.insert("static_r_c".into(), horizon_exact(&stat)?.r_c);
    Ok(out)
}

impl GoldenFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        toml::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    pub fn reference(alpha: f64) -> CliResult<Self> {
        let expected = golden_values(alpha).map_err(|source| CliError::Compute { context: "golden values".into(), source })?;
        Ok(GoldenFile { alpha, expected })
    }

    pub fn to_toml(&self) -> String {
        let mut s = String::from("# Reference values for `ehvac verify --golden`.\n");
        s.push_str(&format!("alpha = {:?}\n\n[expected]\n", self.alpha));
        for (k, v) in &self.expected {
            s.push_str(&format!("{k} = {v:?}\n"));
        }
        s
    }

    pub fn checks(&self) -> Vec<Check> {
        let values = match golden_values(self.alpha) {
            Ok(v) => v,
            Err(e) => return vec![Check::failed("golden", GOLDEN_TOL, e.to_string())],
        };
        self.expected
            .iter()
            .map(|(k, want)| {
                let name = format!("golden:{k}");
                match values.get(k) {
                    Some(&got) => Check::new(&name, GOLDEN_TOL, rel(got, *want), format!("computed {got:e}, pinned {want:e}")),
                    None => Check::failed(&name, GOLDEN_TOL, "unknown golden quantity"),
                }
            })
            .collect()
    }
}
