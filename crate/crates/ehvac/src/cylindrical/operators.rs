//! Nonlinear operators 𝓤 and 𝓥 of the α² field equations
//!
//!   û_rr + û_r/r − û_tt − û/r² = 4α²𝓤/(45 r⁴)
//!   v_rr + v_r/r − v_tt        = 4α²𝓥/(45 r³)
//!
//! Each operator is transcribed twice in different groupings; the pair
//! is compared to catch transcription slips.

use super::ansatz::{check_r, HatPoint};
use crate::error::Result;

struct Vars {
    r: f64,
    u: f64,
    ur: f64,
    ut: f64,
    urr: f64,
    utt: f64,
    utr: f64,
    vr: f64,
    vt: f64,
    vrr: f64,
    vtt: f64,
    vtr: f64,
}

fn vars(p: &HatPoint) -> Vars {
    Vars {
        r: p.r,
        u: p.uh.val,
        ur: p.uh.r,
        ut: p.uh.t,
        urr: p.uh.rr,
        utt: p.uh.tt,
        utr: p.uh.tr,
        vr: p.v.r,
        vt: p.v.t,
        vrr: p.v.rr,
        vtt: p.v.tt,
        vtr: p.v.tr,
    }
}

/// 𝓤 in the grouped form.
pub fn cal_u(p: &HatPoint) -> f64 {
    let Vars { r, u, ur, ut, urr, utt, utr, vr, vt, vrr, vtt, vtr } = vars(p);
    let r2 = r * r;
    let r3 = r2 * r;
    2.0 * r * u * u * (3.0 * r * urr - 3.0 * ur - r * utt) - 6.0 * u * u * u
        + r2 * u
            * (6.0 * ur * ur - 2.0 * vr * vr - 5.0 * vt * vt - 2.0 * ut * (ut + 4.0 * r * utr)
                + 3.0 * r * vt * vtr
                + 4.0 * r * ur * (3.0 * urr - utt)
                + r * vr * (4.0 * vrr - 7.0 * vtt))
        + r3 * (6.0 * ur * ur * ur - vr * (7.0 * vt * (ut + 2.0 * r * utr) - 3.0 * r * ut * vtr)
            + r * vr * vr * (2.0 * urr + 5.0 * utt)
            + ur * ur * (6.0 * r * urr - 2.0 * r * utt)
            + ur * (2.0 * vr * vr - 6.0 * ut * ut - 8.0 * r * ut * utr
                + vt * (5.0 * vt + 3.0 * r * vtr)
                + r * vr * (4.0 * vrr - 7.0 * vtt))
            + r * (urr * (5.0 * vt * vt - 2.0 * ut * ut) - 7.0 * vrr * ut * vt
                + 2.0 * utt * (3.0 * ut * ut + vt * vt)
                + 4.0 * ut * vt * vtt))
}

/// 𝓥 in the grouped form.
pub fn cal_v(p: &HatPoint) -> f64 {
    let Vars { r, u, ur, ut, urr, utt, utr, vr, vt, vrr, vtt, vtr } = vars(p);
    let r2 = r * r;
    u * u * (2.0 * r * vrr - 2.0 * vr + 5.0 * r * vtt)
        + r * u
            * (vt * (10.0 * ut + 3.0 * r * utr) - 14.0 * r * ut * vtr
                + r * vr * (4.0 * urr - 7.0 * utt)
                + 2.0 * ur * (2.0 * vr + 2.0 * r * vrr + 5.0 * r * vtt))
        + r2 * (2.0 * vr * vr * vr - vr * (2.0 * ut * ut - 3.0 * r * ut * utr + 2.0 * vt * (vt + 4.0 * r * vtr))
            + ur * (3.0 * r * vt * utr - 2.0 * ut * (2.0 * vt + 7.0 * r * vtr) + r * vr * (4.0 * urr - 7.0 * utt))
            + vr * vr * (6.0 * r * vrr - 2.0 * r * vtt)
            + ur * ur * (6.0 * vr + 2.0 * r * vrr + 5.0 * r * vtt)
            + r * (vrr * (5.0 * ut * ut - 2.0 * vt * vt) + ut * vt * (4.0 * utt - 7.0 * urr) + 2.0 * vtt * (ut * ut + 3.0 * vt * vt)))
}

/// 𝓤 in the alternate ordering.
pub fn cal_u_expanded(p: &HatPoint) -> f64 {
    let Vars { r, u, ur, ut, urr, utt, utr, vr, vt, vrr, vtt, vtr } = vars(p);
    -6.0 * u.powi(3)
        + 2.0 * r * u.powi(2) * (-3.0 * ur + 3.0 * r * urr - r * utt)
        + r.powi(2)
            * u
            * (6.0 * ur.powi(2) - 2.0 * vr.powi(2) - 5.0 * vt.powi(2) - 2.0 * ut * (ut + 4.0 * r * utr)
                + 3.0 * r * vt * vtr
                + 4.0 * r * ur * (3.0 * urr - utt)
                + r * vr * (4.0 * vrr - 7.0 * vtt))
        + r.powi(3)
            * (6.0 * ur.powi(3)
                + vr * (-7.0 * vt * (ut + 2.0 * r * utr) + 3.0 * r * ut * vtr)
                + r * vr.powi(2) * (2.0 * urr + 5.0 * utt)
                + ur.powi(2) * (6.0 * r * urr - 2.0 * r * utt)
                + ur * (2.0 * vr.powi(2) - 6.0 * ut.powi(2) - 8.0 * r * ut * utr
                    + vt * (5.0 * vt + 3.0 * r * vtr)
                    + r * vr * (4.0 * vrr - 7.0 * vtt))
                + r * (-7.0 * vrr * ut * vt
                    + urr * (-2.0 * ut.powi(2) + 5.0 * vt.powi(2))
                    + 2.0 * (3.0 * ut.powi(2) + vt.powi(2)) * utt
                    + 4.0 * ut * vt * vtt))
}

/// 𝓥 in the alternate ordering.
pub fn cal_v_expanded(p: &HatPoint) -> f64 {
    let Vars { r, u, ur, ut, urr, utt, utr, vr, vt, vrr, vtt, vtr } = vars(p);
    u.powi(2) * (-2.0 * vr + 2.0 * r * vrr + 5.0 * r * vtt)
        + r * u
            * (vt * (10.0 * ut + 3.0 * r * utr) - 14.0 * r * ut * vtr
                + r * vr * (4.0 * urr - 7.0 * utt)
                + 2.0 * ur * (2.0 * vr + 2.0 * r * vrr + 5.0 * r * vtt))
        + r.powi(2)
            * (2.0 * vr.powi(3) - vr * (2.0 * ut.powi(2) - 3.0 * r * ut * utr + 2.0 * vt * (vt + 4.0 * r * vtr))
                + ur * (3.0 * r * vt * utr - 2.0 * ut * (2.0 * vt + 7.0 * r * vtr) + r * vr * (4.0 * urr - 7.0 * utt))
                + vr.powi(2) * (6.0 * r * vrr - 2.0 * r * vtt)
                + ur.powi(2) * (6.0 * vr + 2.0 * r * vrr + 5.0 * r * vtt)
                + r * (vrr * (5.0 * ut.powi(2) - 2.0 * vt.powi(2))
                    + ut * vt * (-7.0 * urr + 4.0 * utt)
                    + 2.0 * (ut.powi(2) + 3.0 * vt.powi(2)) * vtt))
}

/// Both sides of the two field equations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldEquationResidual {
    pub theta_lhs: f64,
    pub z_lhs: f64,
    pub cal_u: f64,
    pub cal_v: f64,
    /// theta_lhs − 4α²𝓤/(45r⁴).
    pub theta_residual: f64,
    /// z_lhs − 4α²𝓥/(45r³).
    pub z_residual: f64,
    /// Largest magnitude among the summed terms, for relative comparisons.
    pub theta_scale: f64,
    pub z_scale: f64,
}

pub fn field_equation_residual(p: &HatPoint, alpha: f64) -> Result<FieldEquationResidual> {
    check_r(p.r)?;
    let r = p.r;
    let (h, v) = (&p.uh, &p.v);
    let k = 4.0 * alpha * alpha / 45.0;
    let cu = cal_u(p);
    let cv = cal_v(p);
    let theta_terms = [h.rr, h.r / r, h.tt, h.val / (r * r)];
    let z_terms = [v.rr, v.r / r, v.tt];
    let theta_rhs = k * cu / r.powi(4);
    let z_rhs = k * cv / r.powi(3);
    let theta_lhs = theta_terms[0] + theta_terms[1] - theta_terms[2] - theta_terms[3];
    let z_lhs = z_terms[0] + z_terms[1] - z_terms[2];
    let amax = |xs: &[f64]| xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(FieldEquationResidual {
        theta_lhs,
        z_lhs,
        cal_u: cu,
        cal_v: cv,
        theta_residual: theta_lhs - theta_rhs,
        z_residual: z_lhs - z_rhs,
        theta_scale: amax(&theta_terms).max(theta_rhs.abs()),
        z_scale: amax(&z_terms).max(z_rhs.abs()),
    })
}
