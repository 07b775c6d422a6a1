//! Tensor algebra against explicit index-loop oracles.

use ehvac::tensor4::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_antisym(rng: &mut ChaCha8Rng) -> Mat4 {
    let mut c = Mat4::zeros();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let x = rng.gen_range(-2.0..2.0);
            c[(i, j)] = x;
            c[(j, i)] = -x;
        }
    }
    c
}

fn random_event(rng: &mut ChaCha8Rng) -> Event {
    if rng.gen_bool(0.5) {
        Event::cartesian(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
    } else {
        Event::cylindrical(rng.gen_range(-3.0..3.0), rng.gen_range(0.2..4.0), rng.gen_range(0.0..6.0), rng.gen_range(-3.0..3.0))
    }
}

/// T^{μν} = g^{μα} g^{νβ} T_{αβ} by explicit loops.
fn raise_both_loops(t: &Mat4, gi: &Mat4) -> Mat4 {
    let mut out = Mat4::zeros();
    for m in 0..4 {
        for n in 0..4 {
            let mut s = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    s += gi[(m, a)] * gi[(n, b)] * t[(a, b)];
                }
            }
            out[(m, n)] = s;
        }
    }
    out
}

#[test]
fn background_examples() {
    let g = background_metric(&Event::cylindrical(0.0, 2.0, 0.0, 0.0)).unwrap();
    assert_eq!(*g.lower(), Mat4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -4.0, -1.0)));
    let g = background_metric(&Event::cartesian(1.0, -2.0, 3.0, 0.5)).unwrap();
    assert_eq!(*g.lower(), Mat4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0)));
    let g = background_metric(&Event::cylindrical(0.0, 3.0, 0.0, 0.0)).unwrap();
    assert!((g.det() + 9.0).abs() < 1e-12);
    assert!(background_metric(&Event::cylindrical(0.0, 0.0, 0.0, 0.0)).is_err());
    assert!(background_metric(&Event::cylindrical(0.0, -1.0, 0.0, 0.0)).is_err());
}

#[test]
fn metric_validation() {
    let mut m = Mat4::identity();
    m[(0, 1)] = 1e-3;
    assert!(Metric4::new(m).is_err());
    assert!(Metric4::diagonal([1.0, -1.0, 0.0, -1.0]).is_err());
}

#[test]
fn christoffel_cylindrical_analytic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let r = rng.gen_range(0.3..5.0);
        let ev = Event::cylindrical(rng.gen_range(-1.0..1.0), r, rng.gen_range(0.0..6.0), 0.0);
        let gam = christoffel(&background_metric, &ev).unwrap();
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let want = match (l, m, n) {
                        (1, 2, 2) => -r,
                        (2, 1, 2) | (2, 2, 1) => 1.0 / r,
                        _ => 0.0,
                    };
                    assert!((gam[l][m][n] - want).abs() < 1e-8, "Γ^{l}_{m}{n} at r = {r}");
                    assert_eq!(gam[l][m][n], gam[l][n][m]);
                }
            }
        }
    }
    let gam = christoffel(&background_metric, &Event::cylindrical(0.0, 2.0, 0.0, 0.0)).unwrap();
    assert!((gam[1][2][2] + 2.0).abs() < 1e-8);
    assert!((gam[2][1][2] - 0.5).abs() < 1e-8);
    let gam = christoffel(&background_metric, &Event::cartesian(0.0, 1.0, 2.0, 3.0)).unwrap();
    assert!(gam.iter().flatten().flatten().all(|&x| x == 0.0));
}

#[test]
fn raise_lower_matches_loops_and_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).unwrap();
        let f = Tensor2::antisymmetric(random_antisym(&mut rng), LOWER_LOWER).unwrap();
        let up = raise_lower(&f, UPPER_UPPER, &g).unwrap();
        let oracle = raise_both_loops(&f.c, g.upper());
        assert!((up.c - oracle).abs().max() < 1e-13);
        let back = raise_lower(&up, LOWER_LOWER, &g).unwrap();
        assert!((back.c - f.c).abs().max() < 1e-12);
        let mixed = raise_lower(&f, UPPER_LOWER, &g).unwrap();
        let back = raise_lower(&mixed, LOWER_LOWER, &g).unwrap();
        assert!((back.c - f.c).abs().max() < 1e-12);
    }
    // identity metric: plain copy
    let id = Metric4::diagonal([1.0, 1.0, 1.0, 1.0]).unwrap();
    let f = Tensor2::antisymmetric(random_antisym(&mut rng), LOWER_LOWER).unwrap();
    assert_eq!(raise_lower(&f, UPPER_UPPER, &id).unwrap().c, f.c);
}

fn cyl_field(ut: f64, ur: f64, vt: f64, vr: f64) -> Tensor2 {
    let mut c = Mat4::zeros();
    c[(0, 2)] = ut;
    c[(0, 3)] = vt;
    c[(1, 2)] = ur;
    c[(1, 3)] = vr;
    Tensor2::antisymmetric(c - c.transpose(), LOWER_LOWER).unwrap()
}

#[test]
fn cylindrical_mixed_and_dual_matrices() {
    let (ut, ur, vt, vr, r) = (0.3, -1.1, 0.7, 0.4, 1.7);
    let g = background_metric(&Event::cylindrical(0.3, r, 0.0, 0.0)).unwrap();
    let f = cyl_field(ut, ur, vt, vr);
    let m = raise_lower(&f, UPPER_LOWER, &g).unwrap();
    assert!((m.c[(0, 2)] - ut).abs() < 1e-15);
    assert!((m.c[(1, 2)] + ur).abs() < 1e-15);
    assert!((m.c[(2, 0)] - ut / (r * r)).abs() < 1e-15);
    assert!((m.c[(2, 1)] - ur / (r * r)).abs() < 1e-15);
    assert!((m.c[(0, 3)] - vt).abs() < 1e-15);
    assert!((m.c[(3, 0)] - vt).abs() < 1e-15);
    let d = hodge_dual(&f, &g).unwrap();
    assert!((d.c[(0, 2)] + r * vr).abs() < 1e-14);
    assert!((d.c[(0, 3)] - ur / r).abs() < 1e-14);
    assert!((d.c[(1, 2)] + r * vt).abs() < 1e-14, "{}", d.c[(1, 2)]);
    assert!((d.c[(1, 3)] - ut / r).abs() < 1e-14);
    let inv = invariants(&f, &g).unwrap();
    let want_f = 2.0 / (r * r) * (ur * ur - ut * ut + r * r * (vr * vr - vt * vt));
    let want_g = 4.0 / r * (ut * vr - ur * vt);
    assert!((inv.f - want_f).abs() < 1e-12 && (inv.g - want_g).abs() < 1e-12);
}

#[test]
fn double_dual_is_minus_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).unwrap();
        let f = Tensor2::antisymmetric(random_antisym(&mut rng), LOWER_LOWER).unwrap();
        let dd = hodge_dual(&hodge_dual(&f, &g).unwrap(), &g).unwrap();
        assert!((dd.c + f.c).abs().max() < 1e-12);
    }
}

#[test]
fn invariant_examples() {
    let g = background_metric(&Event::cartesian(0.0, 0.0, 0.0, 0.0)).unwrap();
    let z = Tensor2::antisymmetric(Mat4::zeros(), LOWER_LOWER).unwrap();
    let inv = invariants(&z, &g).unwrap();
    assert_eq!((inv.f, inv.g), (0.0, 0.0));
    // E along z: F_{tz} = E
    let e = 1.7;
    let mut c = Mat4::zeros();
    c[(0, 3)] = e;
    c[(3, 0)] = -e;
    let inv = invariants(&Tensor2::antisymmetric(c, LOWER_LOWER).unwrap(), &g).unwrap();
    assert!((inv.f + 2.0 * e * e).abs() < 1e-14 && inv.g == 0.0);
    // perpendicular plane-wave amplitudes: null field
    let (a, b) = (0.8, 0.3);
    #[rustfmt::skip]
    let c = Mat4::new(
        0.0, a, 0.0, 0.0,
        -a, 0.0, 0.0, a,
        0.0, 0.0, 0.0, 0.0,
        0.0, -a, 0.0, 0.0,
    );
    let inv = invariants(&Tensor2::antisymmetric(c, LOWER_LOWER).unwrap(), &g).unwrap();
    assert!(inv.is_null(1e-14));
    let _ = b;
}

/// 4 F^ν_λ F*^{μλ} = G g^{μν} and F*^μ_α F*^{αν} − F^μ_α F^{αν} = (F/2) g^{μν}.
#[test]
fn quadratic_field_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).unwrap();
        let f = Tensor2::antisymmetric(random_antisym(&mut rng), LOWER_LOWER).unwrap();
        let d = hodge_dual(&f, &g).unwrap();
        let inv = invariants(&f, &g).unwrap();
        let f_mixed = raise_lower(&f, UPPER_LOWER, &g).unwrap().c;
        let f_up = raise_lower(&f, UPPER_UPPER, &g).unwrap().c;
        let d_mixed = raise_lower(&d, UPPER_LOWER, &g).unwrap().c;
        let d_up = raise_lower(&d, UPPER_UPPER, &g).unwrap().c;
        let gi = g.upper();
        let mut lhs1 = Mat4::zeros();
        for m in 0..4 {
            for n in 0..4 {
                lhs1[(m, n)] = 4.0 * (0..4).map(|l| f_mixed[(n, l)] * d_up[(m, l)]).sum::<f64>();
            }
        }
        assert!((lhs1 - gi * inv.g).abs().max() < 1e-10 * (1.0 + inv.g.abs()));
        let lhs2 = d_mixed * d_up - f_mixed * f_up;
        assert!((lhs2 - gi * (inv.f / 2.0)).abs().max() < 1e-10 * (1.0 + inv.f.abs()));
    }
}

#[test]
fn levi_civita_normalisation() {
    for ev in [Event::cartesian(0.0, 0.0, 0.0, 0.0), Event::cylindrical(0.0, 2.5, 1.0, 0.0)] {
        let g = background_metric(&ev).unwrap();
        let e = levi_civita_lower(&g);
        let w = g.det().abs().sqrt();
        assert!((e[0][1][2][3] - w).abs() < 1e-14);
        assert!((e[1][0][2][3] + w).abs() < 1e-14);
        assert!((e[0][2][1][3] + w).abs() < 1e-14);
        assert!((e[1][2][3][0] + w).abs() < 1e-14);
        assert_eq!(e[0][0][2][3], 0.0);
    }
}

#[test]
fn flat_backgrounds_have_no_curvature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let ev = random_event(&mut rng);
        let h = match ev.chart {
            Chart::Cylindrical => 1e-2 * ev.coords[1].min(1.0),
            Chart::Cartesian => 1e-2,
        };
        let riem = riemann_numeric(&background_metric, &ev, h).unwrap();
        assert!(max_abs_rank4(&riem) < 1e-9, "{:?}: {}", ev, max_abs_rank4(&riem));
    }
}

/// A curved oracle: the 2-sphere-like metric diag(1, −1, −sin²(x)…) is not flat.
#[test]
fn riemann_detects_curvature() {
    let field = |ev: &Event| {
        let x = ev.coords[1];
        Metric4::diagonal([1.0, -1.0, -(x.sin().powi(2)), -1.0])
    };
    let ev = Event::cartesian(0.0, 1.0, 0.0, 0.0);
    let riem = riemann_numeric(&field, &ev, 1e-3).unwrap();
    // unit 2-sphere in (x, y): R^x_{yxy} = sin²x
    assert!((riem[1][2][1][2] - 1f64.sin().powi(2)).abs() < 1e-6, "{}", riem[1][2][1][2]);
    for r in 0..4 {
        for s in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert!((riem[r][s][m][n] + riem[r][s][n][m]).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn antisymmetry_checked() {
    let mut c = Mat4::zeros();
    c[(0, 1)] = 1.0;
    c[(1, 0)] = -1.0 + 1e-12;
    assert!(Tensor2::antisymmetric(c, LOWER_LOWER).is_err());
    c[(1, 0)] = -1.0;
    assert!(Tensor2::antisymmetric(c, LOWER_LOWER).is_ok());
}

proptest! {
    #[test]
    fn prop_round_trip(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ev = random_event(&mut rng);
        let g = background_metric(&ev).unwrap();
        let mut c = Mat4::zeros();
        for i in 0..4 { for j in 0..4 { c[(i, j)] = rng.gen_range(-3.0..3.0); } }
        let t = Tensor2::new(c, LOWER_LOWER);
        let back = raise_lower(&raise_lower(&t, UPPER_UPPER, &g).unwrap(), LOWER_LOWER, &g).unwrap();
        prop_assert!((back.c - c).abs().max() < 1e-12);
    }

    #[test]
    fn prop_invariants_chart_independent(ut in -1.0..1.0f64, ur in -1.0..1.0f64, vt in -1.0..1.0f64, vr in -1.0..1.0f64, r in 0.2..5.0f64) {
        // the same physical field written in the Cartesian chart at θ = 0
        let g = background_metric(&Event::cylindrical(0.0, r, 0.0, 0.0)).unwrap();
        let inv = invariants(&cyl_field(ut, ur, vt, vr), &g).unwrap();
        // at θ = 0: ê_θ = ŷ, so F_{ty} = u_t/r, F_{xy} = u_r/r, F_{tz} = v_t, F_{xz} = v_r
        let mut c = Mat4::zeros();
        c[(0, 2)] = ut / r; c[(1, 2)] = ur / r; c[(0, 3)] = vt; c[(1, 3)] = vr;
        let fc = Tensor2::antisymmetric(c - c.transpose(), LOWER_LOWER).unwrap();
        let gc = background_metric(&Event::cartesian(0.0, r, 0.0, 0.0)).unwrap();
        let invc = invariants(&fc, &gc).unwrap();
        prop_assert!((inv.f - invc.f).abs() < 1e-12 && (inv.g - invc.g).abs() < 1e-12);
    }
}
