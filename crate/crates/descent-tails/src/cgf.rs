//! The asymptotic cumulant generating function of the descent count and the
//! scalar objects derived from it.
//!
//! The central function is
//!
//! ```text
//! L(t) = log((e^t - 1) / t),        L(0) = 0,
//! ```
//!
//! the cumulant generating function of a uniform variable on [0, 1]. Its
//! first derivative is a strictly increasing bijection from R onto (0, 1),
//! so every level x in (0, 1) has a unique saddlepoint t_x with
//! `L'(t_x) = x`, a rate `I(x) = x t_x - L(t_x)` and a curvature
//! `sigma_x^2 = L''(t_x) > 0`.
//!
//! Numerical policy:
//! - near zero the closed forms lose all their leading digits to
//!   cancellation, so `|t| < 0.05` is evaluated by truncated Taylor series;
//! - for `t > 30` the formulas are rewritten in terms of `e^{-t}` so that
//!   nothing overflows before `t` itself does.
//!
//! All functions here are pure; call them from as many threads as you like.

use crate::{Error, Result};

/// Saddlepoint data for a single tail level.
///
/// Invariants (established by [`solve_saddlepoint`], checked in tests):
/// `L'(t) = x` to 1e-12, `rate = x*t - L(t) >= 0`, `sigma_sq > 0`, and the
/// sign of `t` matches the sign of `x - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    /// Level in (0, 1).
    pub x: f64,
    /// Saddlepoint: the unique solution of L'(t) = x.
    pub t: f64,
    /// Large-deviation rate I(x) = x t - L(t).
    pub rate: f64,
    /// Curvature L''(t) at the saddlepoint.
    pub sigma_sq: f64,
}

impl RatePoint {
    /// Standard deviation scale sqrt(L''(t_x)).
    pub fn sigma(&self) -> f64 {
        self.sigma_sq.sqrt()
    }
}

/// Below this the closed forms cancel catastrophically; use series.
/// 0.05 keeps the direct-formula relative error under ~2e-13 on the other
/// side of the cut, while the truncated series is good to ~1e-15 inside it.
const SERIES_CUTOFF: f64 = 0.05;
/// Above this, evaluate via e^{-t} to stay overflow-free.
const LOG_FORM_CUTOFF: f64 = 30.0;

/// L(t) = log((e^t - 1)/t), extended continuously by L(0) = 0.
///
/// Total on finite reals: no overflow for any representable t.
pub fn value(t: f64) -> f64 {
    debug_assert!(t.is_finite());
    let a = t.abs();
    if a < SERIES_CUTOFF {
        // log((e^t-1)/t) = t/2 + t^2/24 - t^4/2880 + t^6/181440 + O(t^8)
        let s = t * t;
        return t * 0.5 + s * (1.0 / 24.0 + s * (-1.0 / 2880.0 + s * (1.0 / 181440.0)));
    }
    if t > LOG_FORM_CUTOFF {
        // log((e^t-1)/t) = t - log t + log(1 - e^{-t})
        return t - t.ln() + (-(-t).exp()).ln_1p();
    }
    if t < -LOG_FORM_CUTOFF {
        // (e^t-1)/t = (1 - e^t)/(-t)
        return (-t.exp()).ln_1p() - (-t).ln();
    }
    (t.exp_m1() / t).ln()
}

/// L'(t) = (e^t (t-1) + 1) / (t (e^t - 1)), extended by L'(0) = 1/2.
///
/// Strictly increasing with range (0, 1).
pub fn deriv1(t: f64) -> f64 {
    debug_assert!(t.is_finite());
    let a = t.abs();
    if a < SERIES_CUTOFF {
        // 1/2 + t/12 - t^3/720 + t^5/30240 - t^7/1209600 + O(t^9)
        let s = t * t;
        return 0.5 + t * (1.0 / 12.0 + s * (-1.0 / 720.0 + s * (1.0 / 30240.0 - s / 1209600.0)));
    }
    if t > 0.0 {
        // Multiply through by e^{-t}: ((t-1) + e^{-t}) / (t (1 - e^{-t})).
        ((t - 1.0) + (-t).exp()) / (t * -(-t).exp_m1())
    } else {
        (t.exp() * (t - 1.0) + 1.0) / (t * t.exp_m1())
    }
}

/// L''(t) = ((e^t-1)^2 - t^2 e^t) / (t (e^t-1))^2, extended by L''(0) = 1/12.
///
/// Strictly positive everywhere.
pub fn deriv2(t: f64) -> f64 {
    debug_assert!(t.is_finite());
    let a = t.abs();
    if a < SERIES_CUTOFF {
        // 1/12 - t^2/240 + t^4/6048 - t^6/172800 + O(t^8)
        let s = t * t;
        return 1.0 / 12.0 + s * (-1.0 / 240.0 + s * (1.0 / 6048.0 - s / 172800.0));
    }
    if t > 0.0 {
        // Multiply through by e^{-2t}.
        let em = (-t).exp();
        let one_m = -(-t).exp_m1(); // 1 - e^{-t}
        (one_m * one_m - t * t * em) / (t * t * one_m * one_m)
    } else {
        let em1 = t.exp_m1(); // e^t - 1
        (em1 * em1 - t * t * t.exp()) / (t * t * em1 * em1)
    }
}

/// Solves L'(t) = x for the unique saddlepoint and packages the rate data.
///
/// Deterministic: the same x always produces the bit-identical RatePoint.
///
/// # Errors
/// Domain error unless 0 < x < 1.
pub fn solve_saddlepoint(x: f64) -> Result<RatePoint> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "saddlepoint level x must lie in (0,1), got {x}"
        )));
    }
    if x == 0.5 {
        return Ok(RatePoint {
            x,
            t: 0.0,
            rate: 0.0,
            sigma_sq: 1.0 / 12.0,
        });
    }
    const TOL: f64 = 1e-12;

    // L' is a monotone bijection onto (0,1), so a bracket always exists;
    // start from [-100, 100] and expand geometrically for extreme levels.
    let mut lo = -100.0f64;
    let mut hi = 100.0f64;
    while deriv1(hi) < x {
        lo = hi;
        hi *= 2.0;
    }
    while deriv1(lo) > x {
        hi = lo;
        lo *= 2.0;
    }

    // Newton refined against the bracket; bisect whenever a Newton step
    // leaves the bracket or fails to shrink the residual.
    let mut t = 0.5 * (lo + hi);
    let mut f = deriv1(t) - x;
    for _ in 0..200 {
        if f.abs() <= TOL {
            break;
        }
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let newton = t - f / deriv2(t);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == t {
            break;
        }
        t = next;
        f = deriv1(t) - x;
    }

    // I(x) >= 0 by convex duality; clamp the last-ulp negatives that the
    // subtraction can produce when t is within rounding of zero.
    let rate = (x * t - value(t)).max(0.0);
    Ok(RatePoint {
        x,
        t,
        rate,
        sigma_sq: deriv2(t),
    })
}

/// Both sides of the complex-line real-part inequality
///
/// ```text
/// Re L(t+iv) <= L(t) - C(t) v^2 / 2,    C(t) = t^2 L''(t) / (t^2 + pi^2),
/// ```
///
/// valid for t != 0 and |v| <= pi. Returns `(lhs, rhs)`; the inequality is
/// a tested contract, not an assumption, so the caller receives both sides.
///
/// # Errors
/// Domain error when t = 0 or |v| > pi.
pub fn complex_realpart_bound(t: f64, v: f64) -> Result<(f64, f64)> {
    if t == 0.0 {
        return Err(Error::domain("complex real-part bound requires t != 0"));
    }
    if v.abs() > std::f64::consts::PI {
        return Err(Error::domain(format!(
            "complex real-part bound requires |v| <= pi, got v = {v}"
        )));
    }
    // |e^{t+iv} - 1|^2 = (e^t - 1)^2 + 2 e^t (1 - cos v), and
    // 1 - cos v = 2 sin^2(v/2).
    let sin_half = (0.5 * v).sin();
    let lhs = if t > LOG_FORM_CUTOFF {
        // Factor e^{2t} out of the modulus.
        let em = (-t).exp();
        let one_m = -(-t).exp_m1();
        t + 0.5 * (one_m * one_m + 4.0 * em * sin_half * sin_half).ln()
            - 0.5 * (t * t + v * v).ln()
    } else {
        let em1 = t.exp_m1();
        0.5 * (em1 * em1 + 4.0 * t.exp() * sin_half * sin_half).ln()
            - 0.5 * (t * t + v * v).ln()
    };
    let c = t * t * deriv2(t) / (t * t + std::f64::consts::PI.powi(2));
    let rhs = value(t) - 0.5 * c * v * v;
    Ok((lhs, rhs))
}
