//! Per-modulus worst-case errors E(m) and their sum over m <= x^(1-eps).
//!
//! Run with: cargo run --example level_sum

use digitdist::budget::Budget;
use digitdist::counting::{error_term, ld_error_sum, ErrorMode};
use digitdist::digitcore::DigitParams;
use num::ToPrimitive;

fn main() {
    let budget = Budget::default();
    let params = DigitParams::new(2, 2, 1).unwrap();

    // exact-small mode searches every window 0 <= y < z <= 2x with z-y <= x;
    // window mode fixes [0, x) and is a cheap lower bound
    for m in [1u64, 2, 3, 5, 8] {
        let exact = error_term(&params, 0, m, 256, ErrorMode::ExactSmall, &budget).unwrap();
        let window = error_term(&params, 0, m, 256, ErrorMode::Window, &budget).unwrap();
        println!(
            "m={m}: E(m) exact = {} ({:.4}), window = {}",
            exact.error,
            exact.error.to_f64().unwrap(),
            window.error,
        );
    }

    // the level-of-distribution sum, exact rational total
    let sum = ld_error_sum(&params, 0, 1 << 10, 0.4, ErrorMode::Window, &budget).unwrap();
    println!(
        "sum of E(m) for m <= {} (x = 2^10, eps = 0.4): {} ~ {:.4}",
        sum.m_max,
        sum.total,
        sum.total.to_f64().unwrap()
    );
    println!(
        "normalized by x: {:.6} (decay here is what a positive level of distribution asserts)",
        sum.total.to_f64().unwrap() / 1024.0
    );
}
