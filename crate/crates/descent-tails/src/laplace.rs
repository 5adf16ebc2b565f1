//! Leading-order expansion of the descent Laplace transform on the real
//! line and on horizontal complex lines, together with explicit envelopes
//! for the relative remainder.
//!
//! For t != 0 the transform factors as
//!
//! ```text
//! m_n(t) = ((1 - e^{-t})/t) ((e^t - 1)/t)^n (1 + r_n(t)),
//! ```
//!
//! and the remainder obeys
//!
//! ```text
//! |r_n(t)| <= |t| e (1 + 1/pi + (2+n)/sqrt(t^2+4pi^2)) (1 + 4pi^2/t^2)^{-n/2},
//! ```
//!
//! so it dies off geometrically in n at a rate set by the distance from the
//! real axis to the nearest singularity of the generating function. The
//! complex variants quantify the same split along t + iv for |v| < pi, with
//! an alternative modulus bound that stays finite through |v| = pi.
//!
//! Everything here is carried in log space (log-polar for complex values):
//! `((e^t-1)/t)^n` leaves the binary64 range for quite moderate (n, t).
//! At t = 0 these operations are domain errors, not extensions.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::num_util::{complex_powu, log_add_exp, LogPolar};
use crate::{cgf, exact::ExactDistribution, Error, Result};

/// Realized accuracy of the leading-order factorization at one (n, t).
///
/// `remainder` is computed from binary64 log values, so it carries a noise
/// floor of roughly 1e-13; once the true remainder (and the envelope) sink
/// below that floor, the field measures rounding, not the expansion. The
/// envelope contract itself is verified against exact high-precision
/// arithmetic in the acceptance suite.
#[derive(Debug, Clone, Copy)]
pub struct LaplaceEstimate {
    pub n: u64,
    pub t: f64,
    /// Log of the leading factor ((1-e^{-t})/t)((e^t-1)/t)^n.
    pub leading_log: f64,
    /// Log of the exact transform from the ground-truth distribution.
    pub exact_log: f64,
    /// exact/leading - 1, realized in binary64.
    pub remainder: f64,
    /// The proven bound on |remainder|.
    pub envelope: f64,
}

impl LaplaceEstimate {
    pub fn new(dist: &ExactDistribution, t: f64) -> Result<LaplaceEstimate> {
        let n = dist.n();
        let leading_log = leading_term(n, t)?;
        let exact_log = dist.laplace(t).ln();
        Ok(LaplaceEstimate {
            n,
            t,
            leading_log,
            exact_log,
            remainder: (exact_log - leading_log).exp_m1(),
            envelope: remainder_envelope_real(n, t)?,
        })
    }
}

/// Log of the leading factor `((1-e^{-t})/t) ((e^t-1)/t)^n`.
///
/// Since (1-e^{-t})/t = (e^{-t}-1)/(-t), both factors are values of the
/// cumulant generating function and the whole expression reduces to
/// `L(-t) + n L(t)`, stable for every finite t != 0.
pub fn leading_term(n: u64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::domain("leading term requires t != 0"));
    }
    Ok(cgf::value(-t) + n as f64 * cgf::value(t))
}

/// The proven envelope for |r_n(t)| on the real line (n >= 1, t != 0).
pub fn remainder_envelope_real(n: u64, t: f64) -> Result<f64> {
    Ok(remainder_envelope_real_log(n, t)?.exp())
}

/// Log of [`remainder_envelope_real`]; does not underflow for large n.
pub fn remainder_envelope_real_log(n: u64, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::domain("remainder envelope requires t != 0"));
    }
    if n < 1 {
        return Err(Error::domain("remainder envelope requires n >= 1"));
    }
    let four_pi_sq = 4.0 * PI * PI;
    let bracket = 1.0 + 1.0 / PI + (2 + n) as f64 / (t * t + four_pi_sq).sqrt();
    Ok(t.abs().ln() + 1.0 + bracket.ln() - 0.5 * n as f64 * (four_pi_sq / (t * t)).ln_1p())
}

/// Leading factor of m_n(t+iv) in log-polar form together with the proven
/// envelope for the relative remainder |r_n(t+iv)| (valid for |v| < pi).
///
/// The n-th power is taken by binary exponentiation of the unit part of
/// the complex ratio, never by exponentiating a principal logarithm, so
/// the argument cannot pick up a spurious branch jump.
pub fn complex_leading_and_envelope(n: u64, t: f64, v: f64) -> Result<(LogPolar, f64)> {
    if t == 0.0 {
        return Err(Error::domain("complex leading term requires t != 0"));
    }
    if v.abs() >= PI {
        return Err(Error::domain(format!(
            "complex remainder envelope requires |v| < pi, got v = {v}"
        )));
    }
    let leading = complex_leading(n, t, v);
    Ok((leading, complex_envelope_log(n, t, v).exp()))
}

/// Log of the envelope in `complex_leading_and_envelope`.
pub fn complex_envelope_log(n: u64, t: f64, v: f64) -> f64 {
    let modulus_sq = t * t + v * v;
    let bracket =
        1.0 + 1.0 / PI + (t * t + 4.0 * PI * PI).sqrt() / (PI * (PI - v.abs()));
    0.5 * modulus_sq.ln()
        + bracket.ln()
        + 0.5 * n as f64 * (modulus_sq.ln() - (t * t + PI * PI).ln())
}

fn complex_leading(n: u64, t: f64, v: f64) -> LogPolar {
    let w = Complex64::new(t, v);
    // (1 - e^{-w})/w, safe for |t| up to ~700.
    let prefactor = (-(-w).exp() + 1.0) / w;
    let ratio = tilt_ratio(t, v);
    let unit = ratio / ratio.norm();
    let phase = complex_powu(unit, n);
    let log_abs =
        prefactor.norm().ln() + n as f64 * (ratio.norm().ln() + cgf::value(t));
    let z = prefactor / prefactor.norm() * phase;
    LogPolar {
        log_abs,
        arg: z.arg(),
    }
}

/// `((e^w - 1)/w) * (t/(e^t - 1))` for w = t + iv: the per-step transform
/// ratio between the complex line and the real axis. Unit modulus at v = 0,
/// and |ratio| <= 1 for every real v when t > 0.
pub(crate) fn tilt_ratio(t: f64, v: f64) -> Complex64 {
    let w = Complex64::new(t, v);
    if t > 0.0 {
        // (e^w-1)/(e^t-1) = (e^{iv} - e^{-t})/(1 - e^{-t}): overflow-free.
        let emt = (-t).exp();
        let num = Complex64::new(v.cos() - emt, v.sin());
        num / (-(-t).exp_m1()) * (t / w)
    } else {
        let ew = Complex64::new(t.exp() * v.cos() - 1.0, t.exp() * v.sin());
        ew / t.exp_m1() * (t / w)
    }
}

/// Log of the alternative modulus bound for |m_n(t+iv)|, valid on the full
/// closed strip |v| <= pi:
///
/// ```text
/// |m_n(t+iv)| <= |1-e^{-(t+iv)}| ((e^t-1)/t)^n
///     [ (t^2+v^2)^{-1/2} exp(-n t^2 L''(t) v^2 / (2 (t^2+pi^2)))
///       + (1 + 1/pi + 2 sqrt(t^2+pi^2)/(pi^2-4))
///         exp(-n 4 t^2 L''(t) v^2 / (2 pi^2 (t^2+4))) ].
/// ```
///
/// Unlike the envelope above this does not blow up as |v| -> pi, at the
/// price of bounding the modulus rather than the relative remainder.
pub fn complex_modulus_bound(n: u64, t: f64, v: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::domain("complex modulus bound requires t != 0"));
    }
    if v.abs() > PI {
        return Err(Error::domain(format!(
            "complex modulus bound requires |v| <= pi, got v = {v}"
        )));
    }
    let l2 = cgf::deriv2(t);
    let c_main = t * t * l2 / (t * t + PI * PI);
    let c_alt = 4.0 * t * t * l2 / (PI * PI * (t * t + 4.0));
    let half_nv2 = 0.5 * n as f64 * v * v;
    let ln_term1 = -0.5 * (t * t + v * v).ln() - c_main * half_nv2;
    let ln_term2 = (1.0 + 1.0 / PI + 2.0 * (t * t + PI * PI).sqrt() / (PI * PI - 4.0)).ln()
        - c_alt * half_nv2;
    Ok(ln_abs_one_minus_exp_neg(t, v) + n as f64 * cgf::value(t) + log_add_exp(ln_term1, ln_term2))
}

/// log |1 - e^{-(t+iv)}|, stable for either sign of t.
fn ln_abs_one_minus_exp_neg(t: f64, v: f64) -> f64 {
    let sin_half = (0.5 * v).sin();
    if t > 0.0 {
        // |1 - e^{-t} e^{-iv}|^2 = (1-e^{-t})^2 + 4 e^{-t} sin^2(v/2)
        let one_m = -(-t).exp_m1();
        0.5 * (one_m * one_m + 4.0 * (-t).exp() * sin_half * sin_half).ln()
    } else {
        // Factor e^{-t} out: |1-e^{-w}| = e^{-t} |e^t - e^{-iv}|.
        let em1 = t.exp_m1();
        -t + 0.5 * (em1 * em1 + 4.0 * t.exp() * sin_half * sin_half).ln()
    }
}
