//! Digit sums, truncations, digit windows and the Thue–Morse phase.
//!
//! Run with: cargo run --example digit_basics

use digitdist::digitcore::{
    digit_sum, digit_sum_trunc, digit_sum_window, tq_phase, unit_digit, DigitParams,
};
use num::BigUint;

fn main() {
    let n = BigUint::from(27u32);
    println!("s_2(27)           = {}", digit_sum(&n, 2));
    println!("s_2^3(27)         = {} (27 mod 8 = 3)", digit_sum_trunc(&n, 2, 3));
    println!("s_2^(1,3)(27)     = {}", digit_sum_window(&n, 2, 1, 3).unwrap());
    println!("u_5(17)           = {}", unit_digit(&BigUint::from(17u32), 5));

    // the recursion s_q(n) = s_q(floor(n/q)) + u_q(n), visible digit by digit
    let big = BigUint::from(123_456_789u64);
    let down = &big / 10u32;
    assert_eq!(
        digit_sum(&big, 10),
        digit_sum(&down, 10) + unit_digit(&big, 10) as u64
    );
    println!("s_10(123456789)   = {}", digit_sum(&big, 10));

    // the phase residue of t_q^{(w)}(n) = e((-1)^{s_2(w)} ell s_q(n) / b)
    let params = DigitParams::new(2, 3, 1).unwrap();
    for n in 0..8u32 {
        let t = tq_phase(&params, 0, &BigUint::from(n));
        let flipped = tq_phase(&params, 1, &BigUint::from(n));
        println!(
            "n={n}: s_2(n) mod 3 = {}, with sign flip: {} (values {:.3} / {:.3})",
            t.t(),
            flipped.t(),
            t.value(params.ell()).re,
            flipped.value(params.ell()).re,
        );
    }
}
