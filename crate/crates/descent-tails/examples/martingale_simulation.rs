//! Monte-Carlo diagnostics for the martingale structure of the descent
//! chain.
//!
//! Samples trajectories from the exact conditional transition, checks the
//! ensemble against the exact moments, and prints the finite-sample state
//! of the limit statements: the quadratic-strong-law statistic against its
//! exact finite-n expectation (the 1/12 limit is approached only
//! logarithmically), the iterated-logarithm envelope, and the rescaled
//! trajectory covariance against s/(12 t^2).
//!
//! ```bash
//! cargo run --example martingale_simulation
//! ```

use descent_tails::simulate::{qsl_expectation, run_summary};

fn main() {
    let n = 2000;
    let paths = 2000;
    let grid = [0.25, 0.5, 1.0];
    let s = run_summary(n, paths, &grid, 2024);

    println!("n = {n}, paths = {paths}, seed = {}", s.seed);
    println!(
        "mean:     {:>12.4} +- {:<8.4} target (n-1)/2   = {}",
        s.mean_hat,
        s.mean_se,
        (n - 1) as f64 / 2.0
    );
    println!(
        "variance: {:>12.4} +- {:<8.4} target (n+1)/12  = {:.4}",
        s.var_hat,
        s.var_se,
        (n + 1) as f64 / 12.0
    );
    println!(
        "qsl:      {:>12.6} +- {:<8.6} finite-n mean    = {:.6}  (limit 1/12 = {:.6})",
        s.qsl_hat,
        s.qsl_se,
        qsl_expectation(n),
        1.0 / 12.0
    );
    println!(
        "lil max:  {:>12.6}             asymptotic level = {:.6}",
        s.lil_max_abs,
        1.0 / 12f64.sqrt()
    );

    println!("\nrescaled-trajectory covariances, target s/(12 t^2) for s <= t:");
    for i in 0..grid.len() {
        for j in i..grid.len() {
            let (s_t, t_t) = (grid[i], grid[j]);
            println!(
                "  cov(W_{:.2}, W_{:.2}) = {:>9.6} +- {:<9.6} target {:>9.6}",
                s_t,
                t_t,
                s.fclt_cov[i][j],
                s.fclt_cov_se[i][j],
                s_t / (12.0 * t_t * t_t)
            );
        }
    }
}
