//! Bessel functions J0, J1, Y0, Y1 of real argument.
//!
//! Below [`SERIES_SEAM`] the ascending power series is summed in double-double
//! arithmetic, which keeps the alternating-sign cancellation below 1e-15
//! absolute. Above it the Hankel asymptotic expansion is used; its smallest
//! term there is far below double precision.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Argument at which evaluation switches from the series to the asymptotic
/// expansion.
pub const SERIES_SEAM: f64 = 20.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
}

/// `kind` of order 0 or 1 at `x`.
pub fn bessel(kind: BesselKind, order: u8, x: f64) -> Result<f64> {
    match (kind, order) {
        (BesselKind::J, 0) => bessel_j0(x),
        (BesselKind::J, 1) => bessel_j1(x),
        (BesselKind::Y, 0) => bessel_y0(x),
        (BesselKind::Y, 1) => bessel_y1(x),
        _ => Err(Error::Domain { what: "Bessel order must be 0 or 1", value: order as f64 }),
    }
}

pub fn bessel_j0(x: f64) -> Result<f64> {
    check_j(x)?;
    Ok(if x < SERIES_SEAM { series_j(x, 0) } else { hankel(x, 0).0 })
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    check_j(x)?;
    Ok(if x < SERIES_SEAM { series_j(x, 1) } else { hankel(x, 1).0 })
}

pub fn bessel_y0(x: f64) -> Result<f64> {
    check_y(x)?;
    Ok(if x < SERIES_SEAM { series_y0(x) } else { hankel(x, 0).1 })
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    check_y(x)?;
    Ok(if x < SERIES_SEAM { series_y1(x) } else { hankel(x, 1).1 })
}

fn check_j(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain { what: "J requires finite x >= 0", value: x });
    }
    Ok(())
}

fn check_y(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { what: "Y requires finite x > 0", value: x });
    }
    Ok(())
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        let t = Dd::two_sum(self.lo, o.lo);
        let hi = s.hi;
        let lo = s.lo + t.hi;
        let u = Dd::two_sum(hi, lo);
        let lo = u.lo + t.lo;
        Dd::two_sum(u.hi, lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        Dd::two_sum(p, e)
    }

    fn div_f(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = q1 * d;
        let pe = q1.mul_add(d, -p);
        let r = Dd::two_sum(self.hi, -p);
        let rem = (r.hi + (r.lo - pe) + self.lo) / d;
        Dd::two_sum(q1, rem)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// (x/2)^2 as a double-double (exact: halving is exact, squaring via FMA).
fn quarter_square(x: f64) -> Dd {
    let h = x * 0.5;
    let p = h * h;
    Dd { hi: p, lo: h.mul_add(h, -p) }
}

/// Sum over k >= 0 of (-z)^k / (k! (k+n)!) * w_k, with weights w_k supplied.
fn ascending<W: FnMut(u32) -> Dd>(z: Dd, n: u32, mut weight: W) -> Dd {
    let mut term = Dd::from(1.0);
    for j in 1..=n {
        term = term.div_f(j as f64);
    }
    let mut sum = Dd::ZERO;
    let mzero = z.neg();
    for k in 0..200u32 {
        if k > 0 {
            term = term.mul(mzero).div_f((k * (k + n)) as f64);
        }
        let contrib = term.mul(weight(k));
        sum = sum.add(contrib);
        if k > 4 && contrib.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn series_j(x: f64, n: u32) -> f64 {
    let z = quarter_square(x);
    let s = ascending(z, n, |_| Dd::from(1.0));
    if n == 0 {
        s.value()
    } else {
        s.mul(Dd::from(x * 0.5)).value()
    }
}

/// Harmonic numbers H_k in double-double, computed incrementally.
struct Harmonic {
    k: u32,
    h: Dd,
}

impl Harmonic {
    fn new() -> Self {
        Harmonic { k: 0, h: Dd::ZERO }
    }

    fn at(&mut self, k: u32) -> Dd {
        while self.k < k {
            self.k += 1;
            self.h = self.h.add(Dd::from(1.0).div_f(self.k as f64));
        }
        self.h
    }
}

fn series_y0(x: f64) -> f64 {
    let z = quarter_square(x);
    let j0 = ascending(z, 0, |_| Dd::from(1.0)).value();
    let mut harmonic = Harmonic::new();
    // sum_{k>=1} (-1)^{k+1} H_k z^k/(k!)^2 = -sum_{k>=0} (-z)^k/(k!)^2 H_k
    let s = ascending(z, 0, |k| harmonic.at(k)).neg().value();
    (2.0 / PI) * (((x * 0.5).ln() + EULER_GAMMA) * j0 + s)
}

fn series_y1(x: f64) -> f64 {
    let z = quarter_square(x);
    let j1 = ascending(z, 1, |_| Dd::from(1.0)).mul(Dd::from(x * 0.5)).value();
    let mut harmonic = Harmonic::new();
    let s = ascending(z, 1, |k| {
        let hk = harmonic.at(k);
        hk.add(hk.add(Dd::from(1.0).div_f((k + 1) as f64)))
    })
    .mul(Dd::from(x * 0.5))
    .value();
    (2.0 / PI) * ((x * 0.5).ln() + EULER_GAMMA) * j1 - 2.0 / (PI * x) - s / PI
}

/// (J_n(x), Y_n(x)) from the Hankel expansion, n in {0, 1}.
fn hankel(x: f64, n: u32) -> (f64, f64) {
    let mu = 4.0 * (n * n) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..120u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() > last || term == 0.0 {
            break;
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // chi = x - (2n+1) pi/4
    let (cos_chi, sin_chi) =
        if n == 0 { ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2) } else { ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2) };
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}
