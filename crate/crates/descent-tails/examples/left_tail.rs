//! Left tails through the reversal symmetry.
//!
//! Reversing a permutation swaps descents and ascents, so the descent count
//! has the same law as (n-1) minus itself and every lower-tail event maps
//! to an upper-tail event exactly: P(D <= m) = P(D >= n-1-m). The transfer
//! report carries the mirrored cutoff and runs the right-tail bounds on it.
//!
//! ```bash
//! cargo run --example left_tail
//! ```

use descent_tails::bounds::left_tail_transfer;
use descent_tails::exact::{eulerian_distribution, rational_as_f64};

fn main() {
    let n = 40;
    let dist = eulerian_distribution(n).unwrap();
    println!(
        "{:>6} {:>7} {:>9} {:>13} {:>13} {:>13}",
        "y", "count", "mirror", "exact", "cid", "chernoff"
    );
    for &y in &[0.05, 0.15, 0.25, 0.3, 0.35] {
        let rep = left_tail_transfer(n, y, Some(&dist)).unwrap();
        let bounds = rep.report.as_ref().expect("mirrored level above 1/2");
        println!(
            "{:>6.2} {:>7} {:>9} {:>13.4e} {:>13.4e} {:>13.4e}",
            y,
            rep.count,
            rep.mirrored_count,
            rational_as_f64(rep.exact.as_ref().unwrap()),
            bounds.cid(),
            bounds.chernoff(),
        );
    }
    println!("\n(the exact column is P(D <= count), equal to P(D >= mirror) exactly)");
}
