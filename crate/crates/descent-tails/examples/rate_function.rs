//! Saddlepoints and the large-deviation rate function.
//!
//! Solves L'(t_x) = x across the unit interval and prints the rate curve
//! I(x) = x t_x - L(t_x), the curvature at the saddlepoint, and the
//! symmetry I(x) = I(1-x) inherited from the reversal symmetry of the
//! descent law.
//!
//! ```bash
//! cargo run --example rate_function
//! ```

use descent_tails::cgf;

fn main() {
    println!("{:>6} {:>14} {:>14} {:>14} {:>12}", "x", "t_x", "I(x)", "sigma^2", "I(1-x)-I(x)");
    for i in 1..20 {
        let x = 0.05 * i as f64;
        let rp = cgf::solve_saddlepoint(x).expect("x in (0,1)");
        let mirror = cgf::solve_saddlepoint(1.0 - x).expect("x in (0,1)");
        println!(
            "{:>6.2} {:>14.8} {:>14.8} {:>14.8} {:>12.2e}",
            x,
            rp.t,
            rp.rate,
            rp.sigma_sq,
            (mirror.rate - rp.rate).abs()
        );
    }

    // The exponential scale the rate sets: P(descents/n >= 0.7) decays like
    // exp(-n I(0.7)) with polynomial corrections.
    let rp = cgf::solve_saddlepoint(0.7).unwrap();
    println!("\nper-step decay at x = 0.7: exp(-I) = {:.6}", (-rp.rate).exp());
    println!("so near n = 100 the tail is already ~1e{:.0}", -100.0 * rp.rate / std::f64::consts::LN_10);
}
