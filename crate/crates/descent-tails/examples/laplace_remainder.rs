//! How fast the leading-order factorization of the Laplace transform
//! becomes exact.
//!
//! Prints the realized relative remainder of the factorization against the
//! proven envelope for growing n. The envelope decays geometrically at rate
//! (1 + 4 pi^2/t^2)^{-1/2} per step; by n ~ 25 the realized remainder
//! drops below what binary64 subtraction can resolve (~1e-13), while the
//! envelope keeps falling; the acceptance suite re-verifies that regime
//! in 512-bit arithmetic.
//!
//! ```bash
//! cargo run --example laplace_remainder
//! ```

use descent_tails::exact::eulerian_distribution;
use descent_tails::laplace::LaplaceEstimate;

fn main() {
    let t = 1.0;
    println!("t = {t}");
    println!(
        "{:>4} {:>16} {:>16} {:>12}",
        "n", "|remainder|", "envelope", "slack"
    );
    for n in [1u64, 2, 4, 8, 12, 16, 20, 25, 30] {
        let dist = eulerian_distribution(n).unwrap();
        let est = LaplaceEstimate::new(&dist, t).unwrap();
        println!(
            "{:>4} {:>16.6e} {:>16.6e} {:>12.3}",
            n,
            est.remainder.abs(),
            est.envelope,
            est.envelope / est.remainder.abs()
        );
    }
    println!("\n(realized values below ~1e-13 are binary64 noise, not the true remainder)");
}
