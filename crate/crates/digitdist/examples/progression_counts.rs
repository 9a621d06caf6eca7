//! Progression counts N_{y,z}(a,b;r,m) and the Gelfond-normalized residual.
//!
//! Run with: cargo run --example progression_counts

use digitdist::budget::Budget;
use digitdist::counting::{count_progression, gelfond_residual, ProgressionQuery};
use digitdist::digitcore::DigitParams;
use num::BigUint;

fn main() {
    let budget = Budget::default();
    let params = DigitParams::new(2, 2, 1).unwrap();

    // the Thue-Morse sequence is perfectly balanced on [0, 2^k)
    let q = ProgressionQuery::new(params, BigUint::from(0u32), BigUint::from(16u32), 0, 1, 0).unwrap();
    println!("even digit sums below 16: {}", count_progression(&q, &budget).unwrap());

    // a base-3 example with both congruence conditions active
    let params3 = DigitParams::new(3, 5, 2).unwrap();
    let q3 = ProgressionQuery::new(
        params3,
        BigUint::from(100u32),
        BigUint::from(10_000u32),
        2,
        7,
        3,
    )
    .unwrap();
    println!(
        "s_3(n) = 2 (mod 5), n = 3 (mod 7), 100 <= n < 10000: {}",
        count_progression(&q3, &budget).unwrap()
    );

    // counts stabilize at width/(b*m); the residual divides the error by N^lambda
    let params23 = DigitParams::new(2, 3, 1).unwrap();
    let res = gelfond_residual(
        &params23,
        5,
        2,
        1,
        &(8..=20).map(|e| 1u64 << e).collect::<Vec<_>>(),
        &budget,
    )
    .unwrap();
    println!("lambda(2,3) = {:.6}", res.lambda);
    for (n, r) in &res.residuals {
        println!("  N = 2^{:2}: |N_0N - N/(bm)| / N^lambda = {r:.6}", n.trailing_zeros());
    }
    println!("max residual: {:.6}", res.max);
}
