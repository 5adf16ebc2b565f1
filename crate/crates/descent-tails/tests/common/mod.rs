//! Shared test support: a 512-bit fixed-point arithmetic for computing
//! realized Laplace-transform remainders exactly, and small statistical
//! helpers for the Monte-Carlo agreement tests.
//!
//! The remainder envelopes decay geometrically and reach ~1e-56 on the
//! tested grids, far below what binary64 subtraction can resolve (~1e-16
//! relative), so the envelope-containment checks evaluate both the exact
//! transform and its leading factor in fixed-point arithmetic with 512
//! fractional bits and form the remainder there. This oracle shares no code
//! with the log-space implementation paths it validates.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// Fractional bits. Accumulated rounding across the longest chains here is
/// below 2^-460, against required resolutions no finer than 2^-200.
pub const PREC: u64 = 512;

/// Fixed-point real: value = inner / 2^PREC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fx(BigInt);

impl Fx {
    pub fn zero() -> Fx {
        Fx(BigInt::zero())
    }

    pub fn one() -> Fx {
        Fx(BigInt::one() << PREC)
    }

    pub fn from_u64(v: u64) -> Fx {
        Fx(BigInt::from(v) << PREC)
    }

    pub fn from_biguint(v: &BigUint) -> Fx {
        Fx(BigInt::from_biguint(Sign::Plus, v.clone()) << PREC)
    }

    /// Exact for any f64 whose exponent is above -PREC (all grid values
    /// here are well within that).
    pub fn from_f64(v: f64) -> Fx {
        assert!(v.is_finite());
        let r = num_rational::BigRational::from_float(v).expect("finite");
        Fx((r.numer() << PREC) / r.denom())
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Fx {
        Fx(-&self.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx(shift_round(&self.0 * &o.0))
    }

    pub fn div(&self, o: &Fx) -> Fx {
        assert!(!o.0.is_zero(), "fixed-point division by zero");
        Fx((&self.0 << PREC) / &o.0)
    }

    pub fn abs(&self) -> Fx {
        Fx(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn le(&self, o: &Fx) -> bool {
        self.0 <= o.0
    }

    pub fn to_f64(&self) -> f64 {
        let mag = descent_tails::num_util::ratio_to_f64(
            self.0.magnitude(),
            &(BigUint::one() << PREC),
        );
        if self.0.is_negative() {
            -mag
        } else {
            mag
        }
    }
}

fn shift_round(x: BigInt) -> BigInt {
    (x + (BigInt::one() << (PREC - 1))) >> PREC
}

/// exp by plain Taylor series; adequate for |x| <= 8 where the largest
/// term is ~4e2 and terms vanish below 2^-PREC within ~220 steps.
pub fn exp_fx(x: &Fx) -> Fx {
    assert!(x.to_f64().abs() <= 8.5, "series domain");
    let mut sum = Fx::one();
    let mut term = Fx::one();
    for j in 1..1000u64 {
        term = term.mul(x).div(&Fx::from_u64(j));
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
    }
    panic!("exp series did not terminate");
}

/// (sin v, cos v) by Taylor series, |v| <= 4.
pub fn sin_cos_fx(v: &Fx) -> (Fx, Fx) {
    assert!(v.to_f64().abs() <= 4.5, "series domain");
    let v2 = v.mul(v);
    let mut sin = v.clone();
    let mut cos = Fx::one();
    let mut term_s = v.clone();
    let mut term_c = Fx::one();
    for j in 1..1000u64 {
        term_c = term_c.mul(&v2).div(&Fx::from_u64((2 * j - 1) * (2 * j))).neg();
        term_s = term_s.mul(&v2).div(&Fx::from_u64((2 * j) * (2 * j + 1))).neg();
        if term_c.is_zero() && term_s.is_zero() {
            return (sin, cos);
        }
        cos = cos.add(&term_c);
        sin = sin.add(&term_s);
    }
    panic!("sin/cos series did not terminate");
}

/// Fixed-point complex.
#[derive(Clone, Debug)]
pub struct FxC {
    pub re: Fx,
    pub im: Fx,
}

impl FxC {
    pub fn real(re: Fx) -> FxC {
        FxC {
            re,
            im: Fx::zero(),
        }
    }

    pub fn one() -> FxC {
        FxC::real(Fx::one())
    }

    pub fn add(&self, o: &FxC) -> FxC {
        FxC {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &FxC) -> FxC {
        FxC {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &FxC) -> FxC {
        FxC {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, s: &Fx) -> FxC {
        FxC {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    pub fn div(&self, o: &FxC) -> FxC {
        let denom = o.norm_sq();
        FxC {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&denom),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&denom),
        }
    }

    pub fn norm_sq(&self) -> Fx {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

/// Realized relative remainder of the leading-order factorization of the
/// Laplace transform at a real point: with y = e^t,
///
/// ```text
/// r = (sum_k w_k y^k) * y * t^{n+1} / (n! (y-1)^{n+1}) - 1,
/// ```
///
/// computed entirely in fixed point. `weights` is the exact count row of
/// size n; t must be exactly representable (dyadic grid values are).
pub fn realized_remainder_real(weights: &[BigUint], t: f64) -> f64 {
    let n = weights.len() as u64;
    let t_fx = Fx::from_f64(t);
    let y = exp_fx(&t_fx);
    // sum_k w_k y^k with an incremental power.
    let mut sum = Fx::zero();
    let mut y_pow = Fx::one();
    for w in weights {
        sum = sum.add(&Fx::from_biguint(w).mul(&y_pow));
        y_pow = y_pow.mul(&y);
    }
    let total: BigUint = weights.iter().sum();
    let y_minus_1 = y.sub(&Fx::one());
    let leading_scaled = Fx::from_biguint(&total)
        .mul(&powi_fx(&y_minus_1, n + 1))
        .div(&y.mul(&powi_fx(&t_fx, n + 1)));
    sum.div(&leading_scaled).sub(&Fx::one()).to_f64()
}

/// Complex variant along t + iv: returns |r| as f64.
pub fn realized_remainder_complex(weights: &[BigUint], t: f64, v: f64) -> f64 {
    let n = weights.len() as u64;
    let t_fx = Fx::from_f64(t);
    let v_fx = Fx::from_f64(v);
    let (sin_v, cos_v) = sin_cos_fx(&v_fx);
    let e_t = exp_fx(&t_fx);
    let y = FxC {
        re: e_t.mul(&cos_v),
        im: e_t.mul(&sin_v),
    };
    let w = FxC {
        re: t_fx,
        im: v_fx,
    };
    let mut sum = FxC::real(Fx::zero());
    let mut y_pow = FxC::one();
    for wk in weights {
        sum = sum.add(&y_pow.scale(&Fx::from_biguint(wk)));
        y_pow = y_pow.mul(&y);
    }
    let total: BigUint = weights.iter().sum();
    let y_minus_1 = y.sub(&FxC::one());
    let leading_scaled = powi_fxc(&y_minus_1, n + 1)
        .scale(&Fx::from_biguint(&total))
        .div(&y.mul(&powi_fxc(&w, n + 1)));
    let r = sum.div(&leading_scaled).sub(&FxC::one());
    r.norm_sq().to_f64().sqrt()
}

fn powi_fx(x: &Fx, e: u64) -> Fx {
    let mut acc = Fx::one();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

fn powi_fxc(x: &FxC, e: u64) -> FxC {
    let mut acc = FxC::one();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

// ---------------------------------------------------------------------
// Statistical helpers.
// ---------------------------------------------------------------------

/// Upper critical values of the chi-square distribution at alpha = 0.001,
/// indexed by degrees of freedom 1..=7.
pub const CHI2_CRIT_001: [f64; 7] = [10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322];

/// Pearson statistic of observed counts against exact cell probabilities.
pub fn pearson_chi2(observed: &[u64], probs: &[f64]) -> f64 {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    for (&o, &p) in observed.iter().zip(probs) {
        let expected = total as f64 * p;
        assert!(expected > 5.0, "cell too thin for a chi-square test");
        let d = o as f64 - expected;
        stat += d * d / expected;
    }
    stat
}

/// Two-sample Kolmogorov–Smirnov test from count histograms over the same
/// support; returns (statistic, critical value at the given alpha).
/// Conservative for discrete data.
pub fn ks_two_sample(a: &[u64], b: &[u64], alpha: f64) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let (na, nb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    let mut ca = 0.0;
    let mut cb = 0.0;
    let mut d: f64 = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        ca += x as f64 / na as f64;
        cb += y as f64 / nb as f64;
        d = d.max((ca - cb).abs());
    }
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let crit = c * ((na + nb) as f64 / (na as f64 * nb as f64)).sqrt();
    (d, crit)
}

#[cfg(test)]
mod sanity {
    use super::*;

    #[test]
    fn fixed_point_round_trips() {
        let x = Fx::from_f64(0.1);
        assert_eq!(x.to_f64(), 0.1);
        let e = exp_fx(&Fx::one());
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let (s, c) = sin_cos_fx(&Fx::from_f64(1.5));
        assert!((s.to_f64() - 1.5f64.sin()).abs() < 1e-15);
        assert!((c.to_f64() - 1.5f64.cos()).abs() < 1e-15);
    }
}
