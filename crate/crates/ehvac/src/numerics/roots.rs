//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Root of `f` in `[a, b]`, located to a bracket no wider than `tol`.
///
/// Secant steps are taken while they shrink the bracket fast enough;
/// otherwise the bracket is bisected.
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.signum() != fb.signum()) || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoSignChange { a, b, fa, fb });
    }
    let mut width = b - a;
    for iter in 0..400 {
        if b - a <= tol {
            break;
        }
        let secant = b - fb * (b - a) / (fb - fa);
        let inner = a + 1e-3 * (b - a) < secant && secant < b - 1e-3 * (b - a);
        let x = if inner && iter % 3 != 2 { secant } else { 0.5 * (a + b) };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::Domain { what: "non-finite function value in bracket", value: x });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // Secant steps can stall on one side; force a bisection if so.
        let new_width = b - a;
        if new_width > 0.5 * width {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        width = b - a;
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let x = find_root_bracketed(|x| x * x - 2.0, 1.0, 2.0, 1e-14).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn half_pi() {
        let x = find_root_bracketed(f64::cos, 1.0, 2.0, 1e-14).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-12), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn reversed_bracket() {
        let x = find_root_bracketed(|x| x - 0.25, 1.0, 0.0, 1e-15).unwrap();
        assert!((x - 0.25).abs() < 1e-15);
    }
}
