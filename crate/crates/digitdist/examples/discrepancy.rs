//! Exact discrepancy of rational rotations, its quadratic reference, and
//! the averaged sum over denominator-q^m frequencies.
//!
//! Run with: cargo run --example discrepancy

use digitdist::budget::Budget;
use digitdist::farey::{
    box_count, discrepancy, discrepancy_brute_reference, discrepancy_sum, near_integer_count,
};
use num::rational::BigRational;
use num::ToPrimitive;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let budget = Budget::default();
    for (num, den, n) in [(1i64, 2i64, 2u64), (1, 3, 30), (355, 113, 100), (0, 1, 10)] {
        let alpha = rational(num, den);
        let fast = discrepancy(&alpha, n, &budget).unwrap();
        let brute = discrepancy_brute_reference(&alpha, n, &budget).unwrap();
        assert_eq!(fast, brute);
        println!(
            "D_{n}({num}/{den}) = {} ~ {:.4} (reference agrees exactly)",
            fast,
            fast.to_f64().unwrap()
        );
    }

    let s = discrepancy_sum(2, 6, 64, &budget).unwrap();
    println!(
        "sum of D_64(d/64) over d < 64: {} ~ {:.3}, normalized constant {:.3}",
        s.total,
        s.total.to_f64().unwrap(),
        s.normalized
    );

    // near-integer counting against the discrepancy bound
    let c = near_integer_count(&rational(1, 3), &rational(0, 1), 30, 1, 3, 2, &budget).unwrap();
    println!(
        "n < 30 with ||n/3|| <= 1/8: {} (bound {:.2})",
        c.count,
        c.bound.to_f64().unwrap()
    );

    // fractional-part box with a floor congruence on top
    let b = box_count(0, 16, &rational(1, 4), &rational(0, 1), 0, 2, 0, 2, &budget).unwrap();
    println!(
        "{{n/4}} in [0,1/2) and floor(n/4) even, n < 16: {} (main term {})",
        b.count, b.main_term
    );
}
