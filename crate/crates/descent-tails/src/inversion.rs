//! Numerical Fourier/Parseval inversion oracles for the descent law,
//! independent of the row recurrence in `exact`.
//!
//! Two routes are provided:
//!
//! - [`parseval_tail`]: the upper tail as a tilted Parseval integral over
//!   the characteristic function of the equivalent unit-interval sum. The
//!   identity is exact, so with tight quadrature tolerances this reproduces
//!   the exact tail to full precision and serves as a genuinely independent
//!   cross-check of the recurrence.
//! - [`fourier_pmf`]: a single pmf value from the Fourier coefficient
//!   integral, with the transform replaced by its leading-order factor.
//!   The neglected remainder is covered by the proven envelopes, so the
//!   result comes with a certified error bar rather than exact agreement.
//!
//! Both integrals are computed on the scaled integrand (the exponentially
//! large factor `exp(n L(t))` is carried separately in log space), with
//! complex powers taken by binary exponentiation so the phase can never
//! pick up a spurious branch.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::num_util::complex_powu;
use crate::quadrature::{integrate, QuadratureSpec};
use crate::{cgf, laplace, lattice, Error, Result};

/// Result of a Parseval tail inversion.
#[derive(Debug, Clone, Copy)]
pub struct TailInversion {
    /// The tail probability (clamped at zero; see `error`).
    pub value: f64,
    /// log of the positive part of the estimate, for underflow-safe reading.
    pub log_value: f64,
    /// Rigorous bound on |value - truth|: quadrature estimate plus the
    /// analytic truncation bound, both mapped to probability scale.
    pub error: f64,
    /// Analytic bound on the discarded |u| > cut mass alone.
    pub truncation_error: f64,
    /// The cut actually used (after automatic extension).
    pub cut: f64,
    pub panels: usize,
}

/// Result of a Fourier pmf inversion.
#[derive(Debug, Clone, Copy)]
pub struct PmfInversion {
    /// Leading-order estimate of P(descents = k).
    pub value: f64,
    /// Certified bar: integrated remainder envelope over the core, the
    /// modulus bound over the edge strip, and all quadrature estimates.
    pub error_bar: f64,
    /// Width of the edge strip, pi - split .. pi; the default split is
    /// n^{-3/4}.
    pub split: f64,
    pub panels: usize,
}

/// Upper-tail probability by the tilted Parseval integral
///
/// ```text
/// P(tail) = exp(-n I(x) - {nx} t_x) * (1/2pi)
///           * Int_R rho(u)^n e^{-i ceil(nx) u} / (t_x + iu) du,
/// ```
///
/// where `rho(u) = ((e^w-1)/w) (t_x/(e^{t_x}-1))`, `w = t_x + iu`. The
/// integrand at -u is the conjugate of its value at +u, so only u >= 0 is
/// integrated and the real part doubled.
///
/// The cut defaults to `A^2 = t^2 + 8 t^2 e^t/(e^t-1)^2` and is doubled
/// until the analytic tail bound is small against the requested tolerance,
/// so the reported error is rigorous at any n.
///
/// # Errors
/// Domain error unless 1/2 < x < 1 and n >= 1; `NonConvergence` if the
/// panel budget runs out.
pub fn parseval_tail(n: u64, x: f64, spec: &QuadratureSpec) -> Result<TailInversion> {
    spec.validate()?;
    if !(x > 0.5 && x < 1.0) {
        return Err(Error::domain(format!(
            "parseval tail requires x in (1/2,1), got {x}"
        )));
    }
    if n < 1 {
        return Err(Error::domain("parseval tail requires n >= 1"));
    }
    let rp = cgf::solve_saddlepoint(x)?;
    let t = rp.t;
    let (cutoff, frac) = lattice::ceil_and_frac(n, x);
    let scale_log = -(n as f64) * rp.rate - frac * t;

    // Estimate of the scaled integral (1/2pi) Int, for tolerance targeting:
    // the saddlepoint approximation of the tail is exp(scale_log) times
    // 1/(sigma t sqrt(2 pi n)). When the probability scale underflows
    // binary64 the absolute criterion is vacuous, so only the relative one
    // is used; log_value then keeps its requested accuracy.
    let scaled_estimate = 1.0 / (rp.sigma() * t * (2.0 * PI * n as f64).sqrt());
    let abs_scaled = spec.abs_tol * (-scale_log).exp();
    let target = 0.5
        * if abs_scaled.is_finite() {
            abs_scaled.max(spec.rel_tol * scaled_estimate)
        } else {
            spec.rel_tol * scaled_estimate
        };

    let default_cut = analytic_cut(t);
    let mut cut = spec.truncation.unwrap_or(default_cut);
    let mut trunc = truncation_bound_scaled(n, t, cut);
    for _ in 0..200 {
        if trunc <= 0.5 * target || !trunc.is_finite() {
            break;
        }
        cut *= 2.0;
        trunc = truncation_bound_scaled(n, t, cut);
    }

    let integrand = tail_integrand(n, t, cutoff as f64);
    let quad = integrate(
        &integrand,
        0.0,
        cut,
        PI * (target - trunc).max(0.25 * target),
        spec.rel_tol,
        spec.max_panels,
    )?;
    let scaled = quad.value.re / PI;
    let scaled_err = quad.error / PI + trunc;

    let scale = scale_log.exp();
    Ok(TailInversion {
        value: (scaled * scale).max(0.0),
        log_value: scale_log + scaled.max(f64::MIN_POSITIVE).ln(),
        error: scaled_err * scale,
        truncation_error: trunc * scale,
        cut,
        panels: quad.panels,
    })
}

/// The analytic default cut: `A^2 = t^2 + 8 t^2 e^t/(e^t-1)^2`.
pub fn analytic_cut(t: f64) -> f64 {
    (t * t * (1.0 + 8.0 * exp_ratio(t))).sqrt()
}

/// e^t/(e^t-1)^2, evaluated as e^{-t}/(1-e^{-t})^2 so large t cannot
/// overflow.
fn exp_ratio(t: f64) -> f64 {
    debug_assert!(t > 0.0);
    let one_m = -(-t).exp_m1();
    (-t).exp() / (one_m * one_m)
}

/// Rigorous bound on the scaled integral mass beyond |u| > cut, using
/// |rho(u)|^2 <= B/(t^2+u^2) with B = t^2 + 4 t^2 e^t/(e^t-1)^2.
fn truncation_bound_scaled(n: u64, t: f64, cut: f64) -> f64 {
    let b_log = (t * t * (1.0 + 4.0 * exp_ratio(t))).ln();
    let ta = t * t + cut * cut;
    let nf = n as f64;
    let log_bound = if n > 2 {
        // (1/(pi t)) B^{n/2} (t^2+A^2)^{1-n/2} / ((n-2) A)
        -(PI * t).ln() + 0.5 * nf * b_log - (0.5 * nf - 1.0) * ta.ln()
            - ((nf - 2.0) * cut).ln()
    } else {
        // (1/pi) B^{n/2} (t^2+A^2)^{-(n-1)/2} (pi/2 - atan(A/t)) / t
        -PI.ln() + 0.5 * nf * b_log - 0.5 * (nf - 1.0) * ta.ln()
            + ((0.5 * PI - (cut / t).atan()) / t).ln()
    };
    log_bound.exp()
}

/// The scaled Parseval integrand u -> rho(u)^n e^{-i m u} / (t + iu).
fn tail_integrand(n: u64, t: f64, m: f64) -> impl Fn(f64) -> Complex64 {
    move |u: f64| {
        let rho = laplace::tilt_ratio(t, u);
        let phase = Complex64::from_polar(1.0, -m * u);
        complex_powu(rho, n) * phase / Complex64::new(t, u)
    }
}

/// One pmf value from the Fourier coefficient integral
///
/// ```text
/// P(descents = k) = e^{-tk} (1/2pi) Int_{-pi}^{pi} m_n(t+iv) e^{-ikv} dv,
/// ```
///
/// with `m_n(t+iv)` replaced by its leading factor on the core
/// |v| < pi - split and dropped entirely on the edge strip. The neglected
/// remainder is integrated into a certified `error_bar` using the proven
/// envelope on the core and the modulus bound on the strip. Evaluating
/// `m_n` from the exact pmf here would be circular; the leading factor is
/// what makes this an independent reconstruction.
///
/// # Errors
/// Domain error unless 0 <= k < n and t > 0; `NonConvergence` as usual.
pub fn fourier_pmf(n: u64, k: u64, t: f64, spec: &QuadratureSpec) -> Result<PmfInversion> {
    spec.validate()?;
    if n < 1 {
        return Err(Error::domain("fourier pmf requires n >= 1"));
    }
    if k >= n {
        return Err(Error::domain(format!(
            "fourier pmf index k = {k} out of range 0..={}",
            n - 1
        )));
    }
    if t.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("fourier pmf requires t > 0"));
    }
    let split = (n as f64).powf(-0.75).min(0.5 * PI);
    let edge = PI - split;
    let scale_log = n as f64 * cgf::value(t) - t * k as f64;

    // Leading-order core integral (scaled by e^{-n L(t)}).
    let kf = k as f64;
    let main = |v: f64| {
        let w = Complex64::new(t, v);
        let pref = (-(-w).exp() + 1.0) / w;
        let rho = laplace::tilt_ratio(t, v);
        pref * complex_powu(rho, n) * Complex64::from_polar(1.0, -kf * v)
    };
    // The edge-strip tolerance floor keeps the bar from chasing zero when
    // the envelope terms are already dominant.
    let envelope_floor: f64 = 1e-18;

    let core = integrate(&main, 0.0, edge, spec.abs_tol, spec.rel_tol, spec.max_panels)?;
    let value_scaled = core.value.re / PI;

    // Certified remainder mass over the core: |pref| |rho|^n * envelope.
    let env_core = |v: f64| {
        let w = Complex64::new(t, v);
        let pref_ln = ((-(-w).exp() + 1.0) / w).norm().ln();
        let rho_ln = laplace::tilt_ratio(t, v).norm().ln();
        let ln = pref_ln + n as f64 * rho_ln + laplace::complex_envelope_log(n, t, v);
        Complex64::new(ln.exp(), 0.0)
    };
    let env_quad = integrate(
        &env_core,
        0.0,
        edge,
        envelope_floor.max(spec.abs_tol),
        1e-6,
        spec.max_panels,
    )?;

    // Modulus bound over the dropped edge strip, scaled by e^{-n L(t)}.
    let nl = n as f64 * cgf::value(t);
    let edge_bound = |v: f64| {
        let ln = laplace::complex_modulus_bound(n, t, v).expect("domain checked") - nl;
        Complex64::new(ln.exp(), 0.0)
    };
    let edge_quad = integrate(
        &edge_bound,
        edge,
        PI,
        envelope_floor.max(spec.abs_tol),
        1e-6,
        spec.max_panels,
    )?;

    let bar_scaled = (env_quad.value.re + env_quad.error
        + edge_quad.value.re
        + edge_quad.error
        + core.error)
        / PI;

    let scale = scale_log.exp();
    Ok(PmfInversion {
        value: value_scaled * scale,
        error_bar: bar_scaled * scale,
        split,
        panels: core.panels + env_quad.panels + edge_quad.panels,
    })
}
