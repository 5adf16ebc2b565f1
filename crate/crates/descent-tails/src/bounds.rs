//! The computable tail estimates for the descent count: the sharp
//! saddlepoint approximation, two concentration bounds with explicit
//! prefactors, the Azuma–Hoeffding bound driven by the martingale's
//! quadratic variation, the plain Chernoff bound, and the symmetry transfer
//! that serves left tails with the same machinery.
//!
//! All bounds target the event `descents/n >= x` for a level x in (1/2, 1)
//! and are valid for every n in their stated domain, not just
//! asymptotically. Values are returned in log space: `exp(-n I(x))`
//! underflows binary64 near n I(x) = 745, and comparing bounds after
//! underflow is meaningless.
//!
//! Each bound enforces its own domain: the Q_n prefactor needs n > 2
//! because of its n-2 denominator; Azuma–Hoeffding needs n >= 2 for a
//! nonempty variation sum; the rest accept any n >= 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::f64::consts::PI;

use crate::exact::ExactDistribution;
use crate::num_util::{ln_biguint, LogSpace};
use crate::{cgf, lattice, Error, Result};

/// All estimates for one (n, x) pair, log-space, with the exact tail
/// alongside when a ground-truth distribution was supplied.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: u64,
    pub x: f64,
    /// ceil(n x): the smallest descent count inside the event.
    pub cutoff: u64,
    /// {n x} = ceil(n x) - n x.
    pub frac: f64,
    /// Exact tail probability, when the exact law is available.
    pub exact: Option<BigRational>,
    pub sharp_log: f64,
    pub cid_log: f64,
    /// None for n <= 2, where the prefactor is undefined.
    pub qn_log: Option<f64>,
    /// None for n = 1, where the variation sum is empty.
    pub azuma_log: Option<f64>,
    pub chernoff_log: f64,
}

impl BoundReport {
    /// Computes every estimate at (n, x), attaching the exact tail when a
    /// distribution of matching size is supplied.
    pub fn compute(n: u64, x: f64, dist: Option<&ExactDistribution>) -> Result<BoundReport> {
        check_level(x)?;
        if n < 1 {
            return Err(Error::domain("bounds require n >= 1"));
        }
        let (cutoff, frac) = lattice::ceil_and_frac(n, x);
        let exact = dist.map(|d| {
            assert_eq!(d.n(), n, "distribution size must match the report");
            d.tail_from_count(cutoff)
        });
        Self::from_lattice(n, x, cutoff, frac, exact)
    }

    /// Core assembly from an explicit lattice pair; used directly by the
    /// left-tail transfer, where the cutoff is exact by construction.
    fn from_lattice(
        n: u64,
        x: f64,
        cutoff: u64,
        frac: f64,
        exact: Option<BigRational>,
    ) -> Result<BoundReport> {
        let rp = cgf::solve_saddlepoint(x)?;
        let expo = exponent_log(n, &rp, frac);
        let gaussian = (rp.sigma() * rp.t * (2.0 * PI * n as f64).sqrt()).ln();
        let sharp_log = expo - gaussian;
        let cid_log = sharp_log + cid_prefactor_from(&rp).ln();
        let qn_log = if n > 2 {
            Some(sharp_log + qn_prefactor_from(n, &rp).ln())
        } else {
            None
        };
        let azuma_log = if n >= 2 {
            Some(azuma_exponent(n, x))
        } else {
            None
        };
        Ok(BoundReport {
            n,
            x,
            cutoff,
            frac,
            exact,
            sharp_log,
            cid_log,
            qn_log,
            azuma_log,
            chernoff_log: expo,
        })
    }

    pub fn sharp(&self) -> f64 {
        self.sharp_log.exp()
    }
    pub fn cid(&self) -> f64 {
        self.cid_log.exp()
    }
    pub fn qn(&self) -> Option<f64> {
        self.qn_log.map(f64::exp)
    }
    pub fn azuma(&self) -> Option<f64> {
        self.azuma_log.map(f64::exp)
    }
    pub fn chernoff(&self) -> f64 {
        self.chernoff_log.exp()
    }

    /// Exact tail as f64 (rounded to nearest).
    pub fn exact_f64(&self) -> Option<f64> {
        self.exact.as_ref().map(crate::exact::rational_as_f64)
    }

    /// Log of the exact tail; -inf for an empty tail.
    pub fn exact_log(&self) -> Option<f64> {
        self.exact.as_ref().map(|r| {
            if r.is_zero() {
                f64::NEG_INFINITY
            } else {
                ln_biguint(&r.numer().to_biguint().unwrap())
                    - ln_biguint(&r.denom().to_biguint().unwrap())
            }
        })
    }

    /// exact / sharp, the quantity whose drift to 1 measures the quality of
    /// the sharp approximation. Computed through logs so it survives any n.
    pub fn ratio(&self) -> Option<f64> {
        self.exact_log().map(|le| (le - self.sharp_log).exp())
    }
}

fn check_level(x: f64) -> Result<()> {
    if x > 0.5 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "tail bounds require x in (1/2,1), got {x}"
        )))
    }
}

/// -n I(x) - {nx} t_x: the exponent shared by the sharp approximation and
/// every bound built on the tilt.
fn exponent_log(n: u64, rp: &cgf::RatePoint, frac: f64) -> f64 {
    -(n as f64) * rp.rate - frac * rp.t
}

/// Saddlepoint approximation of the tail (the main term, without the
/// 1+o(1) factor):
///
/// ```text
/// exp(-n I(x) - {nx} t_x) / (sigma_x t_x sqrt(2 pi n)).
/// ```
pub fn sharp_tail_approx(n: u64, x: f64) -> Result<LogSpace> {
    Ok(LogSpace(BoundReport::compute(n, x, None)?.sharp_log))
}

/// The concentration prefactor
///
/// ```text
/// P(x) = sqrt((t^2+pi^2)/t^2)
///        + (1 + 1/pi + 2 sqrt(t^2+pi^2)/(pi^2-4)) sqrt(pi^2 (t^2+4)/4),
/// ```
///
/// always > 1, diverging as x -> 1/2 where t -> 0.
pub fn cid_prefactor(x: f64) -> Result<f64> {
    check_level(x)?;
    Ok(cid_prefactor_from(&cgf::solve_saddlepoint(x)?))
}

fn cid_prefactor_from(rp: &cgf::RatePoint) -> f64 {
    let t2 = rp.t * rp.t;
    let root = (t2 + PI * PI).sqrt();
    (1.0 + PI * PI / t2).sqrt()
        + (1.0 + 1.0 / PI + 2.0 * root / (PI * PI - 4.0)) * 0.5 * PI * (t2 + 4.0).sqrt()
}

/// The concentration bound with prefactor P(x): sharp approximation times
/// P(x), valid for every n >= 1.
pub fn cid_bound(n: u64, x: f64) -> Result<LogSpace> {
    Ok(LogSpace(BoundReport::compute(n, x, None)?.cid_log))
}

/// The alternative prefactor
///
/// ```text
/// Q_n(x) = sqrt(2 + 8 e^t/(e^t-1)^2)
///          + (4 sigma t/sqrt(2pi)) sqrt(1 + 8 e^t/(e^t-1)^2)
///            * sqrt(n) / (2^{n/2} (n-2)),
/// ```
///
/// defined for n > 2. The second term decays like 2^{-n/2}, so Q_n tends
/// to its first term; no ordering against P(x) is asserted anywhere.
pub fn qn_prefactor(n: u64, x: f64) -> Result<f64> {
    check_level(x)?;
    if n <= 2 {
        return Err(Error::domain("Q_n prefactor requires n > 2"));
    }
    Ok(qn_prefactor_from(n, &cgf::solve_saddlepoint(x)?))
}

fn qn_prefactor_from(n: u64, rp: &cgf::RatePoint) -> f64 {
    let c8 = exp_over_expm1_sq(rp.t);
    let first = (2.0 + 8.0 * c8).sqrt();
    // 2^{n/2} overflows early; assemble the decaying term in logs.
    let nf = n as f64;
    let second_log = (4.0 * rp.sigma() * rp.t / (2.0 * PI).sqrt()).ln()
        + 0.5 * (1.0 + 8.0 * c8).ln()
        + 0.5 * nf.ln()
        - 0.5 * nf * std::f64::consts::LN_2
        - (nf - 2.0).ln();
    first + second_log.exp()
}

/// e^t/(e^t-1)^2 without overflow for t > 0.
fn exp_over_expm1_sq(t: f64) -> f64 {
    debug_assert!(t > 0.0);
    let one_m = -(-t).exp_m1();
    (-t).exp() / (one_m * one_m)
}

/// Q_n(x) times the shared exponential and Gaussian factors; n > 2.
pub fn qn_bound(n: u64, x: f64) -> Result<LogSpace> {
    check_level(x)?;
    if n <= 2 {
        return Err(Error::domain("Q_n bound requires n > 2"));
    }
    Ok(LogSpace(
        BoundReport::compute(n, x, None)?
            .qn_log
            .expect("n > 2 checked"),
    ))
}

/// Azuma–Hoeffding with the exact variation budget:
///
/// ```text
/// P(descents/n >= x) <= exp(-2 n^4 (x - 1/2)^2 / s_n),
/// s_n = sum_{k=2}^{n} k^2,
/// ```
///
/// for n >= 2. Returned linear; see [`azuma_bound_log`] for the exponent.
pub fn azuma_bound(n: u64, x: f64) -> Result<f64> {
    Ok(azuma_bound_log(n, x)?.exp())
}

pub fn azuma_bound_log(n: u64, x: f64) -> Result<f64> {
    check_level(x)?;
    if n < 2 {
        return Err(Error::domain("Azuma-Hoeffding bound requires n >= 2"));
    }
    Ok(azuma_exponent(n, x))
}

fn azuma_exponent(n: u64, x: f64) -> f64 {
    let nf = n as f64;
    let s = quadratic_variation_budget(n) as f64;
    -2.0 * nf.powi(4) * (x - 0.5) * (x - 0.5) / s
}

/// s_n = sum_{k=2}^n k^2 = n(n+1)(2n+1)/6 - 1, exact.
pub fn quadratic_variation_budget(n: u64) -> u128 {
    debug_assert!(n >= 2);
    let n = n as u128;
    n * (n + 1) * (2 * n + 1) / 6 - 1
}

/// Plain Chernoff bound exp(-n I(x) - {nx} t_x); no polynomial correction.
pub fn chernoff_bound(n: u64, x: f64) -> Result<LogSpace> {
    Ok(LogSpace(BoundReport::compute(n, x, None)?.chernoff_log))
}

/// Left-tail analysis of the event `descents/n <= y` for y in (0, 1/2),
/// transferred to the right-tail machinery through the palindrome symmetry
/// of the law: `P(descents <= m) = P(descents >= n-1-m)` exactly.
#[derive(Debug, Clone)]
pub struct LeftTailReport {
    pub n: u64,
    pub y: f64,
    /// The event is descents <= count, with count = floor(n y).
    pub count: u64,
    /// The mirrored event is descents >= mirrored_count = n-1-count.
    pub mirrored_count: u64,
    /// Level driving the right-tail machinery: mirrored_count / n.
    pub equivalent_x: f64,
    /// True when the left event is all of the support (probability one).
    pub certain: bool,
    /// Exact left-tail probability, when the law is available.
    pub exact: Option<BigRational>,
    /// Right-tail report at the mirrored cutoff; None when certain, or when
    /// the mirrored level does not exceed 1/2 (no bound applies there).
    pub report: Option<BoundReport>,
}

pub fn left_tail_transfer(
    n: u64,
    y: f64,
    dist: Option<&ExactDistribution>,
) -> Result<LeftTailReport> {
    if !(y > 0.0 && y < 0.5) {
        return Err(Error::domain(format!(
            "left-tail transfer requires y in (0,1/2), got {y}"
        )));
    }
    if n < 1 {
        return Err(Error::domain("left-tail transfer requires n >= 1"));
    }
    if let Some(d) = dist {
        assert_eq!(d.n(), n, "distribution size must match the report");
    }
    let count = lattice::floor_count(n, y);
    if count >= n - 1 {
        // The event contains the whole support.
        return Ok(LeftTailReport {
            n,
            y,
            count,
            mirrored_count: 0,
            equivalent_x: 0.0,
            certain: true,
            exact: Some(BigRational::from_integer(BigInt::from(1))),
            report: None,
        });
    }
    let mirrored = n - 1 - count;
    let equivalent_x = mirrored as f64 / n as f64;
    let exact = dist.map(|d| d.head_to_count(count));
    if 2 * mirrored <= n {
        // The mirrored level is at or below 1/2; the machinery has nothing
        // valid to say. The exact value (if any) still stands.
        return Ok(LeftTailReport {
            n,
            y,
            count,
            mirrored_count: mirrored,
            equivalent_x,
            certain: false,
            exact,
            report: None,
        });
    }
    // The mirrored cutoff is exact; the fractional gap is measured against
    // the binary64 level actually handed to the solver, and may be a few
    // ulps either side of zero. The exponent identity
    // -nI - {nx}t = nL(t) - t*cutoff keeps the bound valid regardless.
    let frac = {
        let prod = lattice::rational_from_f64(equivalent_x)
            * BigRational::from_integer(BigInt::from(n));
        lattice::rational_to_f64(&(BigRational::from_integer(BigInt::from(mirrored)) - prod))
    };
    let mirrored_exact = dist.map(|d| d.tail_from_count(mirrored));
    let report = BoundReport::from_lattice(n, equivalent_x, mirrored, frac, mirrored_exact)?;
    Ok(LeftTailReport {
        n,
        y,
        count,
        mirrored_count: mirrored,
        equivalent_x,
        certain: false,
        exact,
        report: Some(report),
    })
}
