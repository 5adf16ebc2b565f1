//! Small numeric utilities shared across the crate: log-space magnitudes,
//! log-polar complex values, compensated summation and big-integer/float
//! conversions that stay well-behaved far outside the binary64 range.

use num_bigint::BigUint;
use num_complex::Complex64;

/// A nonnegative magnitude carried as its natural logarithm.
///
/// Tail probabilities and bound prefactors routinely fall below the smallest
/// positive binary64 (`exp(-745)` underflows), so every bound in this crate
/// is computed and stored in log space. `linear()` converts back and is
/// allowed to underflow to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSpace(pub f64);

impl LogSpace {
    /// The magnitude itself, `exp(self.0)`; underflows to 0.0 when the
    /// log-value is below roughly -745.
    pub fn linear(self) -> f64 {
        self.0.exp()
    }

    pub fn ln(self) -> f64 {
        self.0
    }
}

/// A nonzero complex value carried as (log-modulus, principal argument).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPolar {
    pub log_abs: f64,
    /// Principal argument in (-pi, pi].
    pub arg: f64,
}

impl LogPolar {
    pub fn from_complex(z: Complex64) -> LogPolar {
        LogPolar {
            log_abs: z.norm().ln(),
            arg: z.arg(),
        }
    }

    /// The complex value itself; the modulus may over- or underflow.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.log_abs.exp(), self.arg)
    }

    /// Ratio of two log-polar values as an ordinary complex number.
    /// Accurate whenever the two moduli are within ~700 e-folds of each
    /// other, which is the only regime where a ratio is meaningful.
    pub fn ratio(self, other: LogPolar) -> Complex64 {
        Complex64::from_polar((self.log_abs - other.log_abs).exp(), self.arg - other.arg)
    }
}

/// log(exp(a) + exp(b)) without overflow; tolerates -inf inputs.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Neumaier {
        Neumaier::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Natural log of a positive big integer, accurate to ~1e-12 even for
/// integers with tens of thousands of bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return to_f64_lossy(x).ln();
    }
    let shift = bits - 53;
    let top = to_f64_lossy(&(x >> shift));
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` rounded to f64, correct to a few ulp for operands of any
/// size. Honest underflow to 0 / overflow to infinity at the extremes.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    use num_traits::Zero;
    if num.is_zero() {
        return 0.0;
    }
    assert!(!den.is_zero(), "ratio_to_f64: zero denominator");
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so the integer quotient carries ~80 significant bits.
    let shift = nb - db - 80;
    let q = if shift >= 0 {
        num / (den << shift as u64)
    } else {
        (num << (-shift) as u64) / den
    };
    let q = to_f64_lossy(&q);
    // q * 2^shift without intermediate overflow.
    if shift >= 0 {
        q * pow2(shift)
    } else {
        // Split the shift so subnormal results still round through a
        // normal intermediate.
        let half = shift / 2;
        (q * pow2(half)) * pow2(shift - half)
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        (e as f64).exp2()
    }
}

fn to_f64_lossy(x: &BigUint) -> f64 {
    let mut acc = 0.0f64;
    for d in x.to_u64_digits().iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    acc
}

/// z^n by binary exponentiation of the complex number itself. Unlike
/// `exp(n log z)` this is branch-free: the winding of the argument is
/// carried by the products, never by a principal-branch logarithm.
pub fn complex_powu(z: Complex64, n: u64) -> Complex64 {
    let mut result = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    #[test]
    fn ln_of_factorial_matches_lgamma_scale() {
        // 100! has 525 bits; compare against the Stirling series value.
        let mut f = BigUint::one();
        for k in 2u32..=100 {
            f *= BigUint::from(k);
        }
        let expect = 363.73937555556349; // ln(100!) to 17 digits
        assert!((ln_biguint(&f) - expect).abs() < 1e-10);
    }

    #[test]
    fn ratio_handles_huge_operands() {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for k in 2u32..=400 {
            num *= BigUint::from(k); // 400!
        }
        for k in 2u32..=399 {
            den *= BigUint::from(k); // 399!
        }
        let r = ratio_to_f64(&num, &den);
        assert!((r - 400.0).abs() < 1e-10);
        // Tiny ratio underflows honestly.
        assert_eq!(ratio_to_f64(&BigUint::one(), &num), 0.0);
    }

    #[test]
    fn powu_matches_repeated_multiplication() {
        let z = Complex64::new(0.3, -1.1);
        let mut w = Complex64::new(1.0, 0.0);
        for _ in 0..13 {
            w *= z;
        }
        let p = complex_powu(z, 13);
        assert!((p - w).norm() < 1e-12 * w.norm());
    }

    #[test]
    fn log_add_exp_basics() {
        assert!((log_add_exp(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
        assert!((log_add_exp(-1000.0, 0.0) - 0.0).abs() < 1e-15);
    }
}
