//! Real roots of a real cubic.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Sorted real roots of a cubic, duplicates within 1e-9 merged.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicRealRoots {
    pub roots: Vec<f64>,
}

impl CubicRealRoots {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

const MERGE_TOL: f64 = 1e-9;

/// All real roots of `c3 x^3 + c2 x^2 + c1 x + c0`.
///
/// Three real roots use the trigonometric form, one real root the Cardano
/// form. A discriminant within roundoff of zero is treated as a double root.
/// Each root gets one Newton polish step, kept only if it lowers the residual.
pub fn solve_cubic_real(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<CubicRealRoots> {
    if !(c3.abs() >= 1e-300) {
        return Err(Error::DegenerateLeading(c3));
    }
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let scale = half_q * half_q + third_p.abs().powi(3);

    let mut ys = Vec::with_capacity(3);
    if scale == 0.0 {
        ys.push(0.0);
    } else if disc.abs() <= 1e-14 * scale {
        // Double root: y1 = 2w, y2 = y3 = -w with w = cbrt(-q/2).
        let w = (-half_q).cbrt();
        ys.push(2.0 * w);
        ys.push(-w);
    } else if disc < 0.0 {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for k in 0..3 {
            ys.push(m * (theta - 2.0 * PI * k as f64 / 3.0).cos());
        }
    } else {
        let sq = disc.sqrt();
        let u = (-half_q - half_q.signum() * sq).cbrt();
        let y = if u == 0.0 { 0.0 } else { u - third_p / u };
        ys.push(y);
    }

    let poly = |x: f64| ((c3 * x + c2) * x + c1) * x + c0;
    let dpoly = |x: f64| (3.0 * c3 * x + 2.0 * c2) * x + c1;
    let mut roots: Vec<f64> = ys
        .into_iter()
        .map(|y| {
            let x = y - shift;
            let d = dpoly(x);
            if d != 0.0 {
                let xn = x - poly(x) / d;
                if xn.is_finite() && poly(xn).abs() <= poly(x).abs() {
                    return xn;
                }
            }
            x
        })
        .collect();
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
    roots.dedup_by(|x, y| (*x - *y).abs() < MERGE_TOL);
    Ok(CubicRealRoots { roots })
}
