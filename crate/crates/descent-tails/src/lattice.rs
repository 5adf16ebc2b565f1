//! Lattice bookkeeping for tail levels: the ceiling cutoff `ceil(n x)` and
//! the fractional gap `{n x} = ceil(n x) - n x`.
//!
//! The gap convention is `{m} = 0` at integers, which differs from the
//! standard fractional part; every module in this crate uses it.
//!
//! A level given as `f64` is interpreted as the exact binary64 rational it
//! denotes. `0.55` is slightly above 55/100, so `ceil(60 * 0.55)` is 34,
//! not 33; computing the product in exact rational arithmetic (every f64 is
//! a dyadic rational) avoids silent off-by-one flips at lattice points,
//! where the tail and every bound change discontinuously.

use num_bigint::{BigInt, ToBigInt};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// `(ceil(n x), {n x})` for a level supplied as f64, computed exactly.
///
/// For x in (0, 1) the cutoff lies in 1..=n, so it fits comfortably in u64.
pub fn ceil_and_frac(n: u64, x: f64) -> (u64, f64) {
    let (c, frac) = ceil_and_frac_rational(n, &rational_from_f64(x));
    (c.to_u64().expect("cutoff fits u64 for x in (0,1)"), frac)
}

/// Exact-rational variant: `(ceil(n x), {n x})` with the gap rounded to f64
/// only at the very end.
pub fn ceil_and_frac_rational(n: u64, x: &BigRational) -> (BigInt, f64) {
    let prod = x * BigRational::from_integer(n.to_bigint().unwrap());
    let c = prod.ceil().to_integer();
    let frac = BigRational::from_integer(c.clone()) - prod;
    (c, rational_to_f64(&frac))
}

/// `floor(n y)` for a left-tail level supplied as f64, computed exactly.
pub fn floor_count(n: u64, y: f64) -> u64 {
    let prod = rational_from_f64(y) * BigRational::from_integer(n.to_bigint().unwrap());
    prod.floor()
        .to_integer()
        .to_u64()
        .expect("count fits u64 for y in (0,1)")
}

/// The exact dyadic rational denoted by a finite f64.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("level must be finite")
}

/// Rational to f64 via the crate's big-ratio conversion (correct for
/// operands of any size, unlike naive numerator/denominator division).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().abs().to_biguint().unwrap();
    let den = r.denom().abs().to_biguint().unwrap();
    let mag = crate::num_util::ratio_to_f64(&num, &den);
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}
