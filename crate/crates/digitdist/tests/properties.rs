//! Property tests for the algebraic invariants that hold on every input,
//! not just on curated examples.

use digitdist::budget::Budget;
use digitdist::digitcore::{digit_sum, digit_sum_window, rat_norm, DigitParams};
use digitdist::farey;
use digitdist::gowers::PhaseVector;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, ToPrimitive};
use proptest::prelude::*;

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

proptest! {
    /// Digit windows telescope: s^{α,β} + s^{β,γ} = s^{α,γ}.
    #[test]
    fn digit_windows_telescope(n in 0u64..1 << 48, q in 2u32..12, a in 0u32..4, db in 1u32..4, dc in 1u32..4) {
        let (alpha, beta, gamma) = (a, a + db, a + db + dc);
        let n = BigUint::from(n);
        let left = digit_sum_window(&n, q, alpha, beta).unwrap()
            + digit_sum_window(&n, q, beta, gamma).unwrap();
        prop_assert_eq!(left, digit_sum_window(&n, q, alpha, gamma).unwrap());
    }

    /// Base-q digit sums never exceed (q−1)·(number of digits) and respect
    /// the carry recursion at every point.
    #[test]
    fn digit_sum_recursion(n in 0u64..u64::MAX / 2, q in 2u64..40) {
        let s = digit_sum(&BigUint::from(n), q as u32);
        let down = digit_sum(&BigUint::from(n / q), q as u32);
        prop_assert_eq!(s, down + n % q);
    }

    /// Farey neighbours always satisfy the determinant and order rules and
    /// bracket the input; the mediant sits strictly between them.
    #[test]
    fn farey_neighbor_rules(p in -2000i64..2000, d in 1i64..2000, n in 1i64..400) {
        let alpha = rational(p, d);
        let order = BigInt::from(n);
        let (l, r) = farey::farey_neighbors(&alpha, &order).unwrap();
        prop_assert_eq!(l.denom() * r.numer() - l.numer() * r.denom(), BigInt::one());
        prop_assert!(l.denom() + r.denom() > order);
        let mediant = BigRational::new(l.numer() + r.numer(), l.denom() + r.denom());
        prop_assert!(l.to_rational() < mediant && mediant < r.to_rational());
        prop_assert!(l.to_rational() <= alpha && alpha < r.to_rational());
    }

    /// ‖·‖ is subadditive under integer multiplication: ‖na‖ ≤ n‖a‖.
    #[test]
    fn norm_subadditive(p in -4000i64..4000, d in 1i64..500, n in 1i64..50) {
        let a = rational(p, d);
        let na = rational(n, 1) * &a;
        prop_assert!(rat_norm(&na) <= rational(n, 1) * rat_norm(&a));
    }

    /// The discrepancy of any rational rotation lies in [1/N, 1] and agrees
    /// with the quadratic reference.
    #[test]
    fn discrepancy_is_exact_and_bounded(p in 0i64..200, d in 1i64..200, n in 1u64..64) {
        let alpha = rational(p, d);
        let budget = Budget::default();
        let fast = farey::discrepancy(&alpha, n, &budget).unwrap();
        prop_assert!(fast <= BigRational::one());
        prop_assert!(fast >= BigRational::new(BigInt::one(), BigInt::from(n)));
        let brute = farey::discrepancy_brute_reference(&alpha, n, &budget).unwrap();
        prop_assert_eq!(fast, brute);
    }

    /// Group-ring arithmetic is faithful to ℂ: rotating by t multiplies the
    /// complex image by e(ℓt/b), and the full root sum is exactly zero.
    #[test]
    fn phase_vector_rotation(b in 2u32..10, t0 in 0i64..10, shift in 0u32..10) {
        let params = DigitParams::new(2, b, 1).unwrap();
        let v = PhaseVector::basis(&params, &params.phase(t0));
        let rotated = v.rotated(shift);
        let expect = v.to_complex()
            * digitdist::numeric::e(shift as f64 % b as f64 / b as f64);
        prop_assert!((rotated.to_complex() - expect).norm() < 1e-12);
        let mut sum = PhaseVector::zero(&params);
        for t in 0..b {
            sum.add_assign(&PhaseVector::basis(&params, &params.phase(t as i64)));
        }
        prop_assert!(sum.is_zero_value());
    }

    /// E(m) is monotone in x for the window mode lower bound… not in
    /// general, but it is always a lower bound for the exact-small search on
    /// the same x.
    #[test]
    fn window_error_below_exact(m in 1u64..6, x in 2u64..64) {
        let params = DigitParams::new(2, 2, 1).unwrap();
        let budget = Budget::default();
        let w = digitdist::counting::error_term(&params, 0, m, x, digitdist::counting::ErrorMode::Window, &budget).unwrap();
        let e = digitdist::counting::error_term(&params, 0, m, x, digitdist::counting::ErrorMode::ExactSmall, &budget).unwrap();
        prop_assert!(w.error <= e.error);
    }

    /// The rational parser round-trips through rendering.
    #[test]
    fn rational_render_parse(p in -10000i64..10000, d in 1i64..10000) {
        let r = rational(p, d);
        let rendered = if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        };
        let back = digitdist::cli::parse_rational(&rendered).unwrap();
        prop_assert_eq!(back, r);
    }
}

/// Plain (non-proptest) check kept here because it stresses the same
/// surfaces: counts restricted to a residue class sum back to the class
/// totals after splitting by digit class.
#[test]
fn digit_class_partition() {
    let params = DigitParams::new(3, 5, 3).unwrap();
    let budget = Budget::default();
    let (y, z, m) = (7u64, 900u64, 5u64);
    for r in 0..m {
        let mut total = 0u64;
        for a in 0..5u32 {
            let q = digitdist::counting::ProgressionQuery::new(
                params,
                BigUint::from(y),
                BigUint::from(z),
                a,
                m,
                r,
            )
            .unwrap();
            total += digitdist::counting::count_progression(&q, &budget).unwrap();
        }
        assert_eq!(total, (y..z).filter(|n| n % m == r).count() as u64);
    }
    let _ = BigRational::one().to_f64();
}
