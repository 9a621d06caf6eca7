//! The twisted exponential sum S0(N, D, xi) and its shift-window truncation.
//!
//! Run with: cargo run --example exp_sum

use digitdist::budget::Budget;
use digitdist::digitcore::DigitParams;
use digitdist::expsum::{default_a_window, s0_sum, ExpSumConfig};
use num::rational::BigRational;

fn main() {
    let budget = Budget::default();
    let params = DigitParams::new(2, 2, 1).unwrap();
    let xi = BigRational::new(1.into(), 3.into());

    // the shift maximum over a >= 0 is truncated to a < q^Lambda; watch the
    // inner maxima stabilize as the window grows
    let (n_len, d) = (16u64, 4u64);
    println!("per-m maxima as the shift window Lambda grows (N={n_len}, D={d}, xi=1/3):");
    for lam in 2..=default_a_window(2, n_len, 2 * d - 1) {
        let cfg = ExpSumConfig::new(params, n_len, d, xi.clone(), lam).unwrap();
        let s = s0_sum(&cfg, &budget).unwrap();
        let per_m: Vec<String> = s
            .terms
            .iter()
            .map(|t| format!("m={}:{:.4}", t.m, t.max_abs))
            .collect();
        println!("  Lambda={lam:2}: S0 = {:8.4}   {}", s.total, per_m.join("  "));
    }

    // normalized by D*N the sum stays far below the trivial bound q
    let lam = default_a_window(2, n_len, 2 * d - 1);
    let cfg = ExpSumConfig::new(params, n_len, d, xi, lam).unwrap();
    let s = s0_sum(&cfg, &budget).unwrap();
    println!(
        "normalized |S0/(D N)| = {:.4} (trivial bound is q = 2)",
        s.total / (d as f64 * n_len as f64)
    );
}
