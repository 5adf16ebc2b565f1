//! The exact descent law in big-integer arithmetic.
//!
//! Builds the distribution for a few sizes, prints the weight rows against
//! n!, verifies the exact moments, and cross-checks the pmf against the
//! unit-interval sum probabilities computed by inclusion-exclusion: two
//! independent routes to the same law.
//!
//! ```bash
//! cargo run --example exact_distribution
//! ```

use descent_tails::exact::{eulerian_distribution, irwin_hall_interval, rational_as_f64};

fn main() {
    for n in [1u64, 3, 5, 8] {
        let dist = eulerian_distribution(n).unwrap();
        let weights: Vec<String> = dist.weights().iter().map(|w| w.to_string()).collect();
        println!("n = {n}: weights = [{}] over {}!", weights.join(", "), n);
    }

    let n = 12;
    let dist = eulerian_distribution(n).unwrap();
    println!("\nn = {n}: mean = {} (exact), variance = {} (exact)", dist.mean(), dist.variance());

    println!("\npmf vs interval probabilities of the uniform-sum law, n = {n}:");
    println!("{:>4} {:>22} {:>22}", "k", "recurrence", "inclusion-exclusion");
    for k in 0..n {
        let a = dist.pmf(k);
        let b = irwin_hall_interval(n, k).unwrap();
        assert_eq!(a, b, "the two routes must agree exactly");
        println!("{:>4} {:>22} {:>22.16}", k, a.to_string(), rational_as_f64(&b));
    }

    let tail = dist.tail(0.75);
    println!("\nP(descents/12 >= 0.75) = {} = {:.10e}", tail, rational_as_f64(&tail));
}
