//! Carry propagation: adding a small shift rarely changes digits above a
//! truncation height. Counts the exceptional n against the r(N alpha/q^l + 2)
//! bound.
//!
//! Run with: cargo run --example carry_propagation

use digitdist::budget::Budget;
use digitdist::expsum::carry_exceptions;
use num::rational::BigRational;
use num::ToPrimitive;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let budget = Budget::default();
    println!("q=2, r=1, alpha=1, beta=0, N=1000, exceptions vs bound by height:");
    for lambda in 1..=6u32 {
        let c = carry_exceptions(2, lambda, 1, &rational(1, 1), &rational(0, 1), 0, 1000, &budget)
            .unwrap();
        println!(
            "  lambda={lambda}: {:4} exceptions < bound {:.1}",
            c.count,
            c.bound.to_f64().unwrap()
        );
    }

    // a Beatty-style slope: alpha = 5/3 with offset 1/2
    println!("q=3, r=2, alpha=5/3, beta=1/2, N=500:");
    for lambda in 1..=4u32 {
        let c = carry_exceptions(3, lambda, 2, &rational(5, 3), &rational(1, 2), 0, 500, &budget)
            .unwrap();
        println!(
            "  lambda={lambda}: {:4} exceptions < bound {:.1}",
            c.count,
            c.bound.to_f64().unwrap()
        );
    }
}
