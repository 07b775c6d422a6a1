//! Oracle tests for the cylindrical ansatz, Bessel waves, horizons and
//! the nonlinear field-equation operators.

use ehvac::cylindrical::*;
use ehvac::effective_metric::effective_cometric;
use ehvac::lfg::{euler_heisenberg, lambda_pm, PolarizationMode};
use ehvac::numerics::{integrate_ode, OdeStepControl};
use ehvac::tensor4::{background_metric, hodge_dual, invariants, raise_lower, Event, Mat4, Tensor2, LOWER_LOWER, UPPER_UPPER};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_jet(rng: &mut ChaCha8Rng, scale: f64) -> Jet {
    let mut g = || rng.gen_range(-scale..scale);
    Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() }
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> AnsatzPoint {
    let r = rng.gen_range(0.3..3.0);
    let t = rng.gen_range(-2.0..2.0);
    AnsatzPoint { t, r, u: random_jet(rng, scale), v: random_jet(rng, scale) }
}

#[test]
fn background_recovered_at_zero_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = random_point(&mut rng, 1.0);
    let g = effective_metric_cyl(&p, 0.0).unwrap();
    let want = Mat4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -p.r * p.r, -1.0));
    assert_eq!(g, want);
}

#[test]
fn rescaled_metric_is_scalar_multiple_of_raw_inverse() {
    let model = euler_heisenberg(0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let p = random_point(&mut rng, 0.5);
        let f = cyl_field_tensor(&p).unwrap();
        let ev = cyl_event(&p);
        let bg = background_metric(&ev).unwrap();
        for mode in PolarizationMode::BOTH {
            let geom = effective_cometric(&bg, &f, &model, mode, ev.coords).unwrap();
            let lambda = lambda_at(&p, &model, mode).unwrap();
            assert!((lambda - geom.lambda).abs() <= 1e-12 * lambda.abs().max(1e-3));
            let resc = effective_metric_cyl(&p, lambda).unwrap();
            // least-squares scalar fit κ = <raw, resc>/<raw, raw>
            let raw = geom.metric;
            let kappa = raw.dot(&resc) / raw.dot(&raw);
            let resid = (raw * kappa - resc).abs().max() / resc.abs().max();
            assert!(resid < 1e-10, "scalar fit residual {resid}");
            let k2 = rescaling_factor(&p, lambda).unwrap();
            assert!((k2 - kappa).abs() < 1e-10 * kappa.abs().max(1.0), "{k2} vs {kappa}");
            assert_eq!(resc[(2, 3)], lambda * (p.u.t * p.v.t - p.u.r * p.v.r));
        }
    }
}

#[test]
fn closed_form_invariants_and_substress_match_tensor_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = random_point(&mut rng, 1.0);
        let f = cyl_field_tensor(&p).unwrap();
        let bg = background_metric(&cyl_event(&p)).unwrap();
        let inv = invariants(&f, &bg).unwrap();
        let closed = cyl_invariants(&p).unwrap();
        assert!((inv.f - closed.f).abs() < 1e-12 * (1.0 + closed.f.abs()));
        assert!((inv.g - closed.g).abs() < 1e-12 * (1.0 + closed.g.abs()));
        let up = raise_lower(&f, UPPER_UPPER, &bg).unwrap();
        let mixed = raise_lower(&f, [ehvac::tensor4::Index::Upper, ehvac::tensor4::Index::Lower], &bg).unwrap();
        let s = mixed.c * up.c;
        let want = cyl_substress_closed(&p).unwrap();
        assert!((s - want).abs().max() < 1e-12 * (1.0 + want.abs().max()));
    }
}

#[test]
fn full_velocity_solves_null_condition_and_matches_raw_metric() {
    let model = euler_heisenberg(0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let p = random_point(&mut rng, 0.5);
        let lambda = lambda_at(&p, &model, PolarizationMode::Plus).unwrap();
        let g = effective_metric_cyl(&p, lambda).unwrap();
        let f = cyl_field_tensor(&p).unwrap();
        let ev = cyl_event(&p);
        let raw = effective_cometric(&background_metric(&ev).unwrap(), &f, &model, PolarizationMode::Plus, ev.coords).unwrap().metric;
        for dir in [Direction::Outgoing, Direction::Ingoing] {
            let w = radial_drdt_full(&p, lambda, dir).unwrap();
            let null = g[(0, 0)] + 2.0 * g[(0, 1)] * w + g[(1, 1)] * w * w;
            assert!(null.abs() < 1e-10, "null residual {null}");
            let from_raw = drdt_from_metric(raw[(0, 0)], raw[(0, 1)], raw[(1, 1)], dir).unwrap();
            let from_resc = drdt_from_metric(g[(0, 0)], g[(0, 1)], g[(1, 1)], dir).unwrap();
            assert!((from_raw - w).abs() < 1e-10, "{from_raw} vs {w}");
            assert!((from_resc - w).abs() < 1e-12);
        }
    }
}

#[test]
fn zero_field_velocities_are_light_speed() {
    let p = AnsatzPoint { t: 0.0, r: 1.3, ..AnsatzPoint::default() };
    for mode in [ModeChoice::Plus, ModeChoice::Minus, ModeChoice::Averaged] {
        assert_eq!(radial_drdt_second_order(&p, 0.5, Direction::Outgoing, mode).unwrap(), 1.0);
        assert_eq!(radial_drdt_second_order(&p, 0.5, Direction::Ingoing, mode).unwrap(), -1.0);
    }
    assert_eq!(radial_drdt_full(&p, 0.7, Direction::Outgoing).unwrap(), 1.0);
    assert_eq!(radial_drdt_full(&p, 0.7, Direction::Ingoing).unwrap(), -1.0);
}

#[test]
fn second_order_coefficient_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = random_point(&mut rng, 1.0);
    let plus = 1.0 - radial_drdt_second_order(&p, 0.2, Direction::Outgoing, ModeChoice::Plus).unwrap();
    let avg = 1.0 - radial_drdt_second_order(&p, 0.2, Direction::Outgoing, ModeChoice::Averaged).unwrap();
    assert!((plus / avg - 14.0 / 11.0).abs() < 1e-12);
}

/// Symbolic-expansion form: outgoing 1 − (c α²/(45 r²))(u_r + u_t)² − (c α²/45)(v_r + v_t)².
#[test]
fn second_order_matches_expanded_expression() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let p = random_point(&mut rng, 1.0);
        let a: f64 = rng.gen_range(0.01..0.5);
        for (mode, c) in [(ModeChoice::Plus, 14.0), (ModeChoice::Minus, 8.0)] {
            let (u, v, r) = (p.u, p.v, p.r);
            let out = 1.0 - c * a * a * (u.r + u.t).powi(2) / (45.0 * r * r) - c * a * a * (v.r + v.t).powi(2) / 45.0;
            let inn = -1.0 + c * a * a * (u.r - u.t).powi(2) / (45.0 * r * r) + c * a * a * (v.r - v.t).powi(2) / 45.0;
            let o = radial_drdt_second_order(&p, a, Direction::Outgoing, mode).unwrap();
            let i = radial_drdt_second_order(&p, a, Direction::Ingoing, mode).unwrap();
            assert!((o - out).abs() < 1e-12 && (i - inn).abs() < 1e-12);
        }
    }
}

/// The full law and its α² truncation differ at O(α⁴).
#[test]
fn full_minus_second_order_gap_is_quartic() {
    let wave = MaxwellianWave::circular(1.0, 1.0).unwrap();
    for (pm, mc) in [(PolarizationMode::Plus, ModeChoice::Plus), (PolarizationMode::Minus, ModeChoice::Minus)] {
        for &r in &[0.7, 1.5, 4.0] {
            let p = wave.point(0.3, r).unwrap();
            let gap = |alpha: f64| {
                let model = euler_heisenberg(alpha).unwrap();
                let l = lambda_at(&p, &model, pm).unwrap();
                radial_drdt_full(&p, l, Direction::Outgoing).unwrap()
                    - radial_drdt_second_order(&p, alpha, Direction::Outgoing, mc).unwrap()
            };
            let ratio = gap(0.1) / gap(0.05);
            assert!((ratio / 16.0 - 1.0).abs() < 0.2, "ratio {ratio} at r = {r}");
        }
    }
}

/// Full law on a Maxwell field carrying an α²-sized perturbation versus the
/// truncated law on the bare Maxwell field.
#[test]
fn perturbation_injection_keeps_second_order_accuracy() {
    let wave = MaxwellianWave::circular(1.0, 1.0).unwrap();
    let r = 1.3;
    let base = wave.point(0.2, r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let du = random_jet(&mut rng, 1.0);
    let dv = random_jet(&mut rng, 1.0);
    let perturbed = |alpha: f64| {
        let e = alpha * alpha;
        let mut p = base;
        p.u.t += e * du.t;
        p.u.r += e * du.r;
        p.v.t += e * dv.t;
        p.v.r += e * dv.r;
        p
    };
    let gap = |alpha: f64| {
        let model = euler_heisenberg(alpha).unwrap();
        let p = perturbed(alpha);
        let l = lambda_at(&p, &model, PolarizationMode::Plus).unwrap();
        radial_drdt_full(&p, l, Direction::Outgoing).unwrap()
            - radial_drdt_second_order(&base, alpha, Direction::Outgoing, ModeChoice::Plus).unwrap()
    };
    let ratio = gap(0.1) / gap(0.05);
    assert!((ratio / 16.0 - 1.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn maxwellian_solves_linear_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let wave = MaxwellianWave::new(1.3, -0.7, 1.7).unwrap();
    for _ in 0..100 {
        let t = rng.gen_range(-5.0..5.0);
        let r = rng.gen_range(0.05..30.0);
        let h = wave.point(t, r).unwrap().to_hat();
        let res = field_equation_residual(&h, 0.0).unwrap();
        assert!(res.theta_residual.abs() < 1e-10 * res.theta_scale.max(1.0), "{res:?}");
        assert!(res.z_residual.abs() < 1e-10 * res.z_scale.max(1.0), "{res:?}");
    }
}

#[test]
fn maxwellian_partials_match_finite_differences() {
    let wave = MaxwellianWave::new(1.3, -0.7, 1.7).unwrap();
    let fd = FiniteDifferenceAnsatz::new(
        |t, r| {
            let p = wave.point(t, r)?;
            Ok((p.u.val, p.v.val))
        },
        FD_ANSATZ_STEP,
    );
    assert_eq!(fd.derivative_source(), DerivativeSource::FiniteDifference);
    assert_eq!(wave.derivative_source(), DerivativeSource::Analytic);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let t = rng.gen_range(-3.0..3.0);
        let r = rng.gen_range(0.5..10.0);
        let a = wave.point(t, r).unwrap();
        let b = fd.point(t, r).unwrap();
        for (x, y) in [(a.u, b.u), (a.v, b.v)] {
            let scale = [x.val, x.t, x.r, x.tt, x.tr, x.rr].iter().fold(0.0f64, |m, z| m.max(z.abs()));
            for (p, q) in [(x.t, y.t), (x.r, y.r), (x.tt, y.tt), (x.tr, y.tr), (x.rr, y.rr)] {
                assert!((p - q).abs() < 1e-6 * scale, "{p} vs {q} at t = {t}, r = {r}");
            }
        }
    }
}

#[test]
fn hat_field_finite_near_axis() {
    let wave = MaxwellianWave::circular(1.0, 2.0).unwrap();
    // cos(ωt) = 1 removes the Y part, leaving û ~ Uωr/(2ω)
    let h = wave.point(0.0, 1e-6).unwrap().to_hat();
    assert!(h.uh.val.abs() < 1e-5);
    assert!(h.uh.val.is_finite());
}

#[test]
fn circular_velocity_is_time_independent() {
    let wave = MaxwellianWave::circular(0.8, 1.0).unwrap();
    for &r in &[0.2, 1.0, 7.0, 50.0] {
        for dir in [Direction::Outgoing, Direction::Ingoing] {
            let v0 = drdt_maxwellian(&wave, 0.4, 0.0, r, dir, ModeChoice::Averaged).unwrap();
            let mut spread = 0.0f64;
            for k in 0..64 {
                let t = k as f64 * 0.1;
                let p = wave.point(t, r).unwrap();
                let v = radial_drdt_second_order(&p, 0.4, dir, ModeChoice::Averaged).unwrap();
                spread = spread.max((v - v0).abs());
            }
            assert!(spread < 1e-12, "spread {spread} at r = {r}");
        }
    }
}

#[test]
fn maxwellian_law_equals_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for wave in [MaxwellianWave::circular(0.9, 1.3).unwrap(), MaxwellianWave::new(0.9, 0.4, 1.3).unwrap()] {
        for _ in 0..50 {
            let t = rng.gen_range(-3.0..3.0);
            let r = rng.gen_range(0.1..20.0);
            let p = wave.point(t, r).unwrap();
            for dir in [Direction::Outgoing, Direction::Ingoing] {
                for mode in [ModeChoice::Plus, ModeChoice::Minus, ModeChoice::Averaged] {
                    let a = drdt_maxwellian(&wave, 0.3, t, r, dir, mode).unwrap();
                    let b = radial_drdt_second_order(&p, 0.3, dir, mode).unwrap();
                    assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn ingoing_tends_to_light_speed_at_large_radius() {
    let wave = MaxwellianWave::circular(1.0, 1.0).unwrap();
    let alpha = 0.5;
    for &r in &[50.0, 200.0, 1000.0] {
        let v = drdt_maxwellian(&wave, alpha, 0.0, r, Direction::Ingoing, ModeChoice::Averaged).unwrap();
        // J₀² + J₁² + Y₀² + Y₁² − 4/(πx) = O(1/x²)
        assert!((v + 1.0).abs() < 1.0 / (r * r), "r = {r}: {v}");
    }
}

#[test]
fn asymptotic_law_horizon_and_coefficients() {
    let alpha = 0.3;
    let wave = MaxwellianWave::circular(2.0, 1.5).unwrap();
    let rc = asymptotic_rc(&wave, alpha, ModeChoice::Averaged).unwrap();
    let want = 88.0 * alpha * alpha * 4.0 / (45.0 * std::f64::consts::PI * 1.5);
    assert!((rc - want).abs() < 1e-15 * want);
    let v = drdt_asymptotic(&wave, alpha, rc, Direction::Outgoing, ModeChoice::Averaged).unwrap();
    assert!(v.abs() < 1e-15);
    let far = drdt_asymptotic(&wave, alpha, 1e12, Direction::Outgoing, ModeChoice::Averaged).unwrap();
    assert!((far - 1.0).abs() < 1e-10);
    let p = asymptotic_rc(&wave, alpha, ModeChoice::Plus).unwrap();
    let m = asymptotic_rc(&wave, alpha, ModeChoice::Minus).unwrap();
    assert!((p / rc - 112.0 / 88.0).abs() < 1e-14);
    assert!((m / rc - 64.0 / 88.0).abs() < 1e-14);
    assert_eq!(drdt_asymptotic(&wave, alpha, 3.0, Direction::Ingoing, ModeChoice::Averaged).unwrap(), -1.0);
}

#[test]
fn bessel_law_lies_below_asymptotic_law() {
    let wave = MaxwellianWave::circular(1.0, 1.0).unwrap();
    let alpha = 0.4;
    let n = 400;
    for i in 0..=n {
        let r = 0.1 * (1e4f64).powf(i as f64 / n as f64);
        let a = drdt_maxwellian(&wave, alpha, 0.0, r, Direction::Outgoing, ModeChoice::Averaged).unwrap();
        let b = drdt_asymptotic(&wave, alpha, r, Direction::Outgoing, ModeChoice::Averaged).unwrap();
        assert!(a < b, "r = {r}: {a} vs {b}");
    }
}

#[test]
fn closed_trajectories_match_numeric_integration() {
    let wave = MaxwellianWave::circular_with_horizon(1.0, 1.0, 0.5).unwrap();
    let alpha = 0.5;
    let rc = asymptotic_rc(&wave, alpha, ModeChoice::Averaged).unwrap();
    assert!((rc - 1.0).abs() < 1e-14);
    let r0 = 2.0;
    assert_eq!(geodesic_t_of_r_closed(r0, r0, rc, Direction::Outgoing).unwrap(), 0.0);
    assert_eq!(geodesic_t_of_r_closed(r0, r0, rc, Direction::Ingoing).unwrap(), 0.0);
    assert_eq!(geodesic_t_of_r_closed(1.5, r0, rc, Direction::Ingoing).unwrap(), 0.5);
    assert!(geodesic_t_of_r_closed(0.5, r0, rc, Direction::Outgoing).is_err());
    // integrate dt/dr = 1/(dr/dt) over r ∈ [r0, 3 r0]
    let control = OdeStepControl { abs_tol: 1e-12, rel_tol: 1e-12, ..OdeStepControl::default() };
    let sol = integrate_ode(
        |r, _| vec![1.0 / drdt_asymptotic(&wave, alpha, r, Direction::Outgoing, ModeChoice::Averaged).unwrap()],
        &[0.0],
        (r0, 3.0 * r0),
        &control,
    )
    .unwrap();
    for (r, t) in &sol {
        let want = geodesic_t_of_r_closed(*r, r0, rc, Direction::Outgoing).unwrap();
        assert!((t[0] - want).abs() < 1e-6, "r = {r}");
    }
}

#[test]
fn geodesics_without_field_are_straight() {
    let wave = MaxwellianWave::circular(0.0, 1.0).unwrap();
    let path = integrate_geodesic(&wave, 0.5, 2.0, Direction::Outgoing, ModeChoice::Averaged, 10.0, &GeodesicControl::default()).unwrap();
    assert_eq!(path.termination, Termination::ReachedBound);
    for &(t, r) in &path.samples {
        assert!((r - 2.0 - t).abs() < 1e-9);
    }
    assert!((path.samples.last().unwrap().0 - 10.0).abs() < 1e-12);
}

#[test]
fn geodesics_escape_outside_and_fall_inside_horizon() {
    let alpha = 0.5;
    let wave = MaxwellianWave::circular_with_horizon(1.0, 1.0, alpha).unwrap();
    let rep = find_horizons(&wave, alpha, ModeChoice::Averaged, (0.05, 50.0)).unwrap();
    let rc = rep.outer_rc.unwrap();
    let control = GeodesicControl { r_max: Some(10.0 * rc), ..GeodesicControl::default() };
    let out = integrate_geodesic(&wave, alpha, 2.0 * rc, Direction::Outgoing, ModeChoice::Averaged, 1e3, &control).unwrap();
    assert_eq!(out.termination, Termination::ReachedBound);
    assert!(out.samples.last().unwrap().1 >= 10.0 * rc);
    assert!(out.samples.windows(2).all(|w| w[1].1 > w[0].1 && w[1].0 > w[0].0));
    let r_i = rep.inner_r_i.unwrap();
    let inside = integrate_geodesic(&wave, alpha, 0.5 * (r_i + rc), Direction::Outgoing, ModeChoice::Averaged, 50.0, &control).unwrap();
    assert!(inside.samples.windows(2).all(|w| w[1].1 < w[0].1 && w[1].0 > w[0].0));
    assert!(inside.samples.iter().all(|s| s.1 > 0.0));
}

#[test]
fn geodesic_floor_stops_as_singular() {
    let wave = MaxwellianWave::circular(0.0, 1.0).unwrap();
    let path = integrate_geodesic(&wave, 0.5, 1.0, Direction::Ingoing, ModeChoice::Averaged, 10.0, &GeodesicControl::default()).unwrap();
    assert_eq!(path.termination, Termination::SingularStop);
    assert!(path.samples.last().unwrap().1 <= singular_floor(1.0));
}

#[test]
fn horizons_for_large_estimate_and_off_wave() {
    let alpha = 0.5;
    let wave = MaxwellianWave::circular_with_horizon(100.0, 1.0, alpha).unwrap();
    let rep = find_horizons(&wave, alpha, ModeChoice::Averaged, (50.0, 200.0)).unwrap();
    let rc = rep.outer_rc.unwrap();
    assert!((rc / 100.0 - 1.0).abs() < 0.01, "rc = {rc}");
    let off = MaxwellianWave::circular(0.0, 1.0).unwrap();
    let rep = find_horizons(&off, alpha, ModeChoice::Averaged, (0.01, 100.0)).unwrap();
    assert_eq!((rep.outer_rc, rep.inner_r_i, rep.degenerate_radius), (None, None, None));
}

#[test]
fn inner_horizon_and_degenerate_radius_ordering() {
    let alpha = 0.5;
    let wave = MaxwellianWave::circular_with_horizon(1.0, 1.0, alpha).unwrap();
    let rep = find_horizons(&wave, alpha, ModeChoice::Averaged, (0.01, 100.0)).unwrap();
    let (ri, rd, rc) = (rep.inner_r_i.unwrap(), rep.degenerate_radius.unwrap(), rep.outer_rc.unwrap());
    assert!(ri < rd && rd < rc, "{ri} {rd} {rc}");
    assert!((rc - 1.05).abs() < 0.05, "rc = {rc}");
    assert!(ri > 0.25 && ri < 0.5, "ri = {ri}");
    let o = drdt_maxwellian(&wave, alpha, 0.0, rd, Direction::Outgoing, ModeChoice::Averaged).unwrap();
    let i = drdt_maxwellian(&wave, alpha, 0.0, rd, Direction::Ingoing, ModeChoice::Averaged).unwrap();
    assert!((o - i).abs() < 1e-10);
}

#[test]
fn zero_field_operators_vanish() {
    let h = HatPoint { t: 0.0, r: 2.0, ..HatPoint::default() };
    let res = field_equation_residual(&h, 0.7).unwrap();
    assert_eq!([res.theta_lhs, res.z_lhs, res.cal_u, res.cal_v, res.theta_residual, res.z_residual], [0.0; 6]);
    assert!(field_equation_residual(&HatPoint::default(), 0.7).is_err());
}

#[test]
fn maxwellian_residual_is_cubic_in_amplitude() {
    let alpha = 0.3;
    for &(t, r) in &[(0.2, 0.8), (1.0, 2.5), (-0.4, 6.0)] {
        let res = |a: f64| {
            let w = MaxwellianWave::circular(a, 1.0).unwrap();
            field_equation_residual(&w.point(t, r).unwrap().to_hat(), alpha).unwrap()
        };
        let (a, b) = (res(0.2), res(0.1));
        assert!((a.theta_residual / b.theta_residual / 8.0 - 1.0).abs() < 1e-6);
        assert!((a.z_residual / b.z_residual / 8.0 - 1.0).abs() < 1e-6);
    }
}

fn small_int_hat(rng: &mut ChaCha8Rng) -> HatPoint {
    let r = (rng.gen_range(1..=5)) as f64;
    let mut g = || rng.gen_range(-6i32..=6) as f64;
    let uh = Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() };
    let v = Jet { val: g(), t: g(), r: g(), tt: g(), tr: g(), rr: g() };
    HatPoint { t: 0.0, r, uh, v }
}

/// On small-integer jets every intermediate is an exactly representable
/// integer, so the two groupings must agree bit for bit.
#[test]
fn two_transcriptions_agree_exactly_on_integer_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let h = small_int_hat(&mut rng);
        assert_eq!(cal_u(&h), cal_u_expanded(&h));
        assert_eq!(cal_v(&h), cal_v_expanded(&h));
    }
}

/// X^{μν} = 4F F^{μν} + 7G F*^{μν} for the Taylor field built from a jet.
fn x_tensor(h: &HatPoint, dt: f64, dr: f64) -> Mat4 {
    let r = h.r + dr;
    let (a, v) = (h.uh, h.v);
    // û and v as quadratic polynomials about (t0, r0)
    let uh = a.val + a.t * dt + a.r * dr + 0.5 * a.tt * dt * dt + a.tr * dt * dr + 0.5 * a.rr * dr * dr;
    let uh_t = a.t + a.tt * dt + a.tr * dr;
    let uh_r = a.r + a.tr * dt + a.rr * dr;
    let v_t = v.t + v.tt * dt + v.tr * dr;
    let v_r = v.r + v.tr * dt + v.rr * dr;
    // u = r û
    let u_t = r * uh_t;
    let u_r = uh + r * uh_r;
    let mut c = Mat4::zeros();
    c[(0, 2)] = u_t;
    c[(0, 3)] = v_t;
    c[(1, 2)] = u_r;
    c[(1, 3)] = v_r;
    let c = c - c.transpose();
    let f = Tensor2::antisymmetric(c, LOWER_LOWER).unwrap();
    let ev = Event::cylindrical(h.t + dt, r, 0.0, 0.0);
    let g = background_metric(&ev).unwrap();
    let inv = invariants(&f, &g).unwrap();
    let up = raise_lower(&f, UPPER_UPPER, &g).unwrap();
    let dual = hodge_dual(&f, &g).unwrap();
    let dual_up = raise_lower(&dual, UPPER_UPPER, &g).unwrap();
    up.c * (4.0 * inv.f) + dual_up.c * (7.0 * inv.g)
}

/// div^ν = ∂_t X^{tν} + (1/r) ∂_r (r X^{rν}).
fn fd_divergence(h: &HatPoint) -> [f64; 4] {
    let eps = 1e-3;
    let st = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
    let mut out = [0.0; 4];
    for &(o, w) in &st {
        let xt = x_tensor(h, o * eps, 0.0);
        let rr = h.r + o * eps;
        let xr = x_tensor(h, 0.0, o * eps);
        for nu in 0..4 {
            out[nu] += w * xt[(0, nu)] / eps + w * rr * xr[(1, nu)] / (eps * h.r);
        }
    }
    out
}

#[test]
fn operators_match_covariant_divergence_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let r = rng.gen_range(0.5..3.0);
        let uh = random_jet(&mut rng, 1.0);
        let v = random_jet(&mut rng, 1.0);
        let h = HatPoint { r, uh, v, ..HatPoint::default() };
        let div = fd_divergence(&h);
        let u_oracle = h.r.powi(5) * div[2] / 4.0;
        let v_oracle = h.r.powi(3) * div[3] / 4.0;
        let (cu, cv) = (cal_u(&h), cal_v(&h));
        let (ue, ve) = (cal_u_expanded(&h), cal_v_expanded(&h));
        assert!((cu - ue).abs() <= 1e-13 * cu.abs().max(1.0));
        assert!((cv - ve).abs() <= 1e-13 * cv.abs().max(1.0));
        assert!((cu - u_oracle).abs() < 1e-6 * cu.abs().max(1e-3), "U {cu} vs {u_oracle}");
        assert!((cv - v_oracle).abs() < 1e-6 * cv.abs().max(1e-3), "V {cv} vs {v_oracle}");
    }
}

proptest! {
    #[test]
    fn prop_full_velocity_ordering_and_null(
        ut in -0.5..0.5f64, ur in -0.5..0.5f64, vt in -0.5..0.5f64, vr in -0.5..0.5f64, r in 0.3..3.0f64
    ) {
        let p = AnsatzPoint {
            t: 0.0, r,
            u: Jet { t: ut, r: ur, ..Jet::default() },
            v: Jet { t: vt, r: vr, ..Jet::default() },
        };
        let model = euler_heisenberg(0.2).unwrap();
        let inv = cyl_invariants(&p).unwrap();
        let l = lambda_pm(&model, inv.f, inv.g, PolarizationMode::Minus).unwrap();
        let o = radial_drdt_full(&p, l, Direction::Outgoing).unwrap();
        let i = radial_drdt_full(&p, l, Direction::Ingoing).unwrap();
        prop_assert!(o >= i);
        let g = effective_metric_cyl(&p, l).unwrap();
        for w in [o, i] {
            prop_assert!((g[(0,0)] + 2.0 * g[(0,1)] * w + g[(1,1)] * w * w).abs() < 1e-10);
        }
    }

    #[test]
    fn prop_hat_roundtrip(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_point(&mut rng, 2.0);
        let q = p.to_hat().to_ansatz();
        for (a, b) in [(p.u, q.u), (p.v, q.v)] {
            for (x, y) in [(a.val, b.val), (a.t, b.t), (a.r, b.r), (a.tt, b.tt), (a.tr, b.tr), (a.rr, b.rr)] {
                prop_assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
            }
        }
    }
}
